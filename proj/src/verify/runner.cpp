#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <algorithm>
#include <functional>

#include "json.hpp"

#include "context.hpp"
#include "xtc/errors.hpp"

namespace xtc {
namespace {

using Json = nlohmann::ordered_json;

struct SuiteEntry {
  std::string name;
  std::string description;
  void (*run)(suites::Context&);
};

const std::vector<SuiteEntry>& suite_table() {
  static const std::vector<SuiteEntry> table{
      {"tensor-algebra", "row representation, insertions, contractions, bigcirc, Frobenius", suites::algebra},
      {"projection", "tangential projection, projector identities, dagger", suites::projection},
      {"differential-identities", "gradients, mean curvature, product rules, shape operators",
       suites::differential_identities},
      {"stokes", "Stokes formula, integration by parts, path FTC, co-normals", suites::stokes},
      {"curl", "curl on surfaces, circulation, curl-grad and div-curl", suites::curl},
      {"laplacian", "extrinsic and covariant Laplacians, weak form", suites::laplacian},
      {"euler", "Euler flow residuals, extrinsic momentum, force balance", suites::euler},
      {"stress", "Cauchy stress force, torque, equilibrium diagnostics", suites::stress},
      {"evolving", "Reynolds transport, commutators, Dirichlet energy rate", suites::evolving},
  };
  return table;
}

Json vector_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
  return a;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double sphere_area_error(const SuiteConfig& config, int order) {
  const GeometryInstance s = make_geometry("sphere", {}, {order, config.quadrature.panels});
  const double area = integrate(s.atlas, constant_field(Tensor::scalar(1.0, 3), 3)).value();
  return std::abs(area - 4.0 * std::numbers::pi) / (4.0 * std::numbers::pi);
}

double sphere_exp_error(const SuiteConfig& config, int order) {
  const GeometryInstance s = make_geometry("sphere", {}, {order, config.quadrature.panels});
  const TensorField f({3, 0}, [](std::span<const double> x, double) { return Tensor::scalar(std::exp(x[2]), 3); });
  const double exact = 2.0 * std::numbers::pi * (std::exp(1.0) - std::exp(-1.0));
  return std::abs(integrate(s.atlas, f).value() - exact) / exact;
}

double sphere_curvature_error(const SuiteConfig& config, double h) {
  DerivativeSettings d = config.derivatives;
  d.h_x = h;
  const GeometryInstance s = make_geometry("sphere", {}, config.quadrature);
  Calculus calc(s.geometry, DerivativeEngine(d));
  const TensorField kappa = calc.mean_curvature();
  double worst = 0.0;
  for (const auto& x : s.atlas.nodes()) {
    const Tensor expect = Tensor::covector(scaled(2.0, x.x));
    worst = std::max(worst, norm(kappa(x.x) - expect) / norm(expect));
  }
  return worst;
}

void append_study(std::vector<ConvergenceRow>& rows, const std::string& check, const std::string& parameter,
                  const std::vector<double>& values, const std::function<double(double)>& error) {
  // Errors at the roundoff floor count as converged.
  constexpr double floor = 1e-14;
  double previous = INFINITY;
  for (double v : values) {
    ConvergenceRow r{check, parameter, v, error(v), false};
    r.monotone = r.error < previous || r.error <= floor;
    previous = r.error;
    rows.push_back(r);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suite_table()) n.push_back(s.name);
    n.push_back("all");
    return n;
  }();
  return names;
}

void validate(const SuiteConfig& config) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end())
    throw ConfigError("unknown suite '" + config.suite + "'");
  if (config.quadrature.order < 1 || config.quadrature.order > 256)
    throw ConfigError("quadrature order must lie in [1, 256]");
  if (config.quadrature.panels < 1) throw ConfigError("quadrature panels must be positive");
  if (!(config.derivatives.h_x >= 0.0) || !(config.derivatives.h_t >= 0.0))
    throw ConfigError("finite-difference steps must be positive");
  for (const auto& [key, tol] : config.tolerances)
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("tolerance for '" + key + "' must be nonnegative");
  if (!config.geometry.empty()) make_geometry(config.geometry, config.geometry_params, config.quadrature);
  else if (!config.geometry_params.empty()) throw ConfigError("geometry parameters given without a geometry");
}

std::string to_string(Metric m) { return m == Metric::abs ? "abs" : "rel"; }
std::string to_string(Criterion c) { return c == Criterion::at_most ? "at_most" : "at_least"; }

bool VerificationReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

VerificationReport run_suite(const SuiteConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.config = config;
  suites::Context ctx(report.config, report.checks);
  for (const auto& s : suite_table())
    if (config.suite == "all" || config.suite == s.name) s.run(ctx);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.checks.empty())
    throw ConfigError("suite '" + config.suite + "' has no checks for geometry '" + config.geometry + "'");
  return report;
}

std::string report_json(const VerificationReport& report, bool include_wall_time) {
  const SuiteConfig& c = report.config;
  Json cfg;
  cfg["suite"] = c.suite;
  cfg["geometry"] = c.geometry;
  cfg["geometry_params"] = Json::object();
  for (const auto& [k, v] : c.geometry_params) cfg["geometry_params"][k] = v;
  cfg["order"] = c.quadrature.order;
  cfg["panels"] = c.quadrature.panels;
  cfg["fd"] = to_string(c.derivatives.mode);
  cfg["hx"] = c.derivatives.h_x;
  cfg["ht"] = c.derivatives.h_t;
  cfg["tolerances"] = Json::object();
  for (const auto& [k, v] : c.tolerances) cfg["tolerances"][k] = v;
  cfg["seed"] = c.seed;

  Json checks = Json::array();
  for (const auto& r : report.checks) {
    Json j;
    j["id"] = r.id;
    j["identity"] = r.identity;
    j["lhs"] = vector_json(r.lhs);
    j["rhs"] = vector_json(r.rhs);
    j["abs"] = number(r.abs);
    j["rel"] = number(r.rel);
    j["metric"] = to_string(r.metric);
    j["criterion"] = to_string(r.criterion);
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    if (!r.error.empty()) j["error"] = r.error;
    checks.push_back(std::move(j));
  }

  Json out;
  out["schema"] = kReportSchema;
  out["config"] = std::move(cfg);
  out["pass"] = report.pass();
  out["checks"] = std::move(checks);
  if (include_wall_time) out["wall_time_s"] = report.wall_time_s;
  return out.dump(2) + "\n";
}

std::vector<ConvergenceRow> convergence_table(const SuiteConfig& base, const std::vector<int>& orders,
                                              const std::vector<double>& steps) {
  validate(base);
  if (orders.size() < 2) throw ConfigError("a convergence study needs at least two orders");
  for (int o : orders)
    if (o < 1 || o > 256) throw ConfigError("quadrature order must lie in [1, 256]");
  for (double h : steps)
    if (!(h > 0.0)) throw ConfigError("finite-difference steps must be positive");

  std::vector<double> order_values(orders.begin(), orders.end());
  std::vector<ConvergenceRow> rows;
  append_study(rows, "sphere.area", "order", order_values,
               [&](double o) { return sphere_area_error(base, static_cast<int>(o)); });
  append_study(rows, "sphere.exp_z", "order", order_values,
               [&](double o) { return sphere_exp_error(base, static_cast<int>(o)); });
  if (!steps.empty())
    append_study(rows, "sphere.mean_curvature", "hx", steps, [&](double h) { return sphere_curvature_error(base, h); });
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "check,parameter,value,error,monotone\n";
  for (const auto& r : rows)
    out << r.check << ',' << r.parameter << ',' << r.value << ',' << r.error << ',' << (r.monotone ? 1 : 0) << '\n';
  return out.str();
}

std::string list_suites_text() {
  std::ostringstream out;
  for (const auto& s : suite_table()) out << s.name << "  " << s.description << '\n';
  out << "all  every suite above\n";
  return out.str();
}

std::string list_geometries_text() {
  std::ostringstream out;
  for (const auto& g : geometry_catalog()) {
    out << g.name << "  " << g.description;
    if (!g.defaults.empty()) {
      out << "  [";
      bool first = true;
      for (const auto& [k, v] : g.defaults) {
        out << (first ? "" : ", ") << k << '=' << v;
        first = false;
      }
      out << ']';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace xtc
