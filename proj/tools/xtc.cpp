#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xtc/errors.hpp"
#include "xtc/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string suite = "all";
  std::string geometry;
  std::string geom_params;
  int order = 16;
  int panels = 2;
  std::string fd = "fd2";
  double hx = 0.0;
  double ht = 0.0;
  std::vector<std::string> tol;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  std::vector<int> orders{4, 8, 16};
  std::vector<double> steps{1e-4, 1e-5, 1e-6};
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--geometry", f.geometry, "built-in geometry (see 'list geometries')");
  cmd->add_option("--geom-params", f.geom_params, "geometry parameters k=v,k=v");
  cmd->add_option("--order", f.order, "Gauss-Legendre points per panel and axis")->check(CLI::PositiveNumber);
  cmd->add_option("--panels", f.panels, "panels per chart axis")->check(CLI::PositiveNumber);
  cmd->add_option("--fd", f.fd, "derivative mode")->check(CLI::IsMember({"fd2", "fd4", "analytic"}));
  cmd->add_option("--ht", f.ht, "innermost time step")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output file");
  cmd->add_option("--config", f.config, "key = value file mirroring the flags");
}

// Keys from the config file fill only the options that were not given on the command line.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw xtc::ConfigError("cannot read config file '" + path + "'");
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw xtc::ConfigError("unknown config key '" + key + "'");
    }
    if (key == "config") throw xtc::ConfigError("config files cannot nest");
    if (opt->count() > 0) continue;
    for (const auto& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

xtc::SuiteConfig to_config(const Flags& f) {
  xtc::SuiteConfig c;
  c.suite = f.suite;
  c.geometry = f.geometry;
  c.geometry_params = xtc::parse_geometry_params(f.geom_params);
  c.quadrature = {f.order, f.panels};
  c.derivatives = {xtc::parse_derivative_mode(f.fd), f.hx, f.ht};
  for (const auto& item : f.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw xtc::ConfigError("tolerance '" + item + "' is not of the form id=value");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      c.tolerances[item.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw xtc::ConfigError("tolerance '" + item + "' has a non-numeric value");
    }
  }
  c.seed = f.seed;
  c.out = f.out;
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw xtc::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_verify(const Flags& f) {
  const xtc::SuiteConfig config = to_config(f);
  const xtc::VerificationReport report = xtc::run_suite(config);
  write_text(config.out, xtc::report_json(report));
  int failed = 0;
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    ++failed;
    std::cerr << "FAIL " << c.id << "  " << xtc::to_string(c.metric) << '=' << c.measured() << " tol=" << c.tol;
    if (!c.error.empty()) std::cerr << "  error: " << c.error;
    std::cerr << '\n';
  }
  std::cerr << report.checks.size() << " checks, " << failed << " failed, " << report.wall_time_s << " s\n";
  return report.pass() ? kExitPass : kExitFail;
}

int run_convergence(const Flags& f) {
  const xtc::SuiteConfig config = to_config(f);
  write_text(config.out, xtc::convergence_csv(xtc::convergence_table(config, f.orders, f.steps)));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extrinsic tensor calculus verification"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  verify->add_option("--suite", f.suite, "suite name (see 'list suites')");
  verify->add_option("--hx", f.hx, "innermost spatial step")->check(CLI::PositiveNumber);
  verify->add_option("--tol", f.tol, "tolerance override id=value, repeatable");
  add_common(verify, f);

  CLI::App* convergence = app.add_subcommand("convergence", "quadrature and step-size studies as CSV");
  convergence->add_option("--orders", f.orders, "quadrature orders")->delimiter(',')->check(CLI::PositiveNumber);
  convergence->add_option("--hx", f.steps, "spatial steps for the curvature study")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  add_common(convergence, f);

  std::string what;
  CLI::App* list = app.add_subcommand("list", "list suites or geometries");
  list->add_option("what", what, "suites or geometries")->required()->check(CLI::IsMember({"suites", "geometries"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*list) {
      std::cout << (what == "suites" ? xtc::list_suites_text() : xtc::list_geometries_text());
      return kExitPass;
    }
    CLI::App* cmd = *verify ? verify : convergence;
    if (!f.config.empty()) apply_config_file(cmd, f.config);
    return *verify ? run_verify(f) : run_convergence(f);
  } catch (const xtc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
