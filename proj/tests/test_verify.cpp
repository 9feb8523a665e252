#include <algorithm>

#include "doctest.h"
#include "json.hpp"
#include "xtc/errors.hpp"
#include "xtc/verify.hpp"

using namespace xtc;

namespace {

SuiteConfig config(const std::string& suite, const std::string& geometry = {}) {
  SuiteConfig c;
  c.suite = suite;
  c.geometry = geometry;
  return c;
}

}  // namespace

TEST_CASE("validation rejects bad configurations") {
  CHECK_NOTHROW(validate(config("all")));
  CHECK_THROWS_AS(validate(config("nonsense")), ConfigError);
  CHECK_THROWS_AS(validate(config("stokes", "nowhere")), ConfigError);
  SuiteConfig c = config("stokes", "sphere");
  c.geometry_params["R"] = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config("stokes");
  c.quadrature.order = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config("stokes");
  c.tolerances["stokes"] = -1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(run_suite(config("euler", "helix_segment")), ConfigError);
}

TEST_CASE("suite names") {
  const auto& names = suite_names();
  for (const char* s : {"tensor-algebra", "projection", "differential-identities", "stokes", "curl", "laplacian",
                        "euler", "stress", "evolving", "all"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK(list_suites_text().find("evolving") != std::string::npos);
  CHECK(list_geometries_text().find("sphere") != std::string::npos);
  CHECK(list_geometries_text() == list_geometries_text());
}

TEST_CASE("report is deterministic and versioned") {
  const VerificationReport a = run_suite(config("stress"));
  const VerificationReport b = run_suite(config("stress"));
  CHECK(report_json(a, false) == report_json(b, false));
  SuiteConfig other = config("stress");
  other.seed = 2;
  CHECK(report_json(run_suite(other), false) != report_json(a, false));

  const auto j = nlohmann::json::parse(report_json(a));
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == a.pass());
  CHECK(j.contains("wall_time_s"));
  CHECK_FALSE(nlohmann::json::parse(report_json(a, false)).contains("wall_time_s"));
  CHECK(j["checks"].size() == a.checks.size());
  for (const auto& c : j["checks"])
    for (const char* key : {"id", "identity", "lhs", "rhs", "abs", "rel", "tol", "pass"}) CHECK(c.contains(key));
}

TEST_CASE("overall pass is the conjunction of the records") {
  SuiteConfig c = config("curl", "plane_disk");
  const VerificationReport ok = run_suite(c);
  CHECK(ok.pass());
  c.tolerances["curl.plane_disk.rotation"] = 0.0;
  const VerificationReport bad = run_suite(c);
  CHECK_FALSE(bad.pass());
  REQUIRE(bad.find("curl.plane_disk.rotation") != nullptr);
  CHECK_FALSE(bad.find("curl.plane_disk.rotation")->pass);
  CHECK(bad.find("curl.plane_disk.constant")->pass);
}

TEST_CASE("tolerance overrides use the longest matching prefix") {
  SuiteConfig c = config("curl", "plane_disk");
  c.tolerances["curl"] = 1.0;
  c.tolerances["curl.plane_disk"] = 2.0;
  c.tolerances["curl.plane_disk.rotation"] = 3.0;
  c.tolerances["curl.plane"] = 4.0;
  const VerificationReport r = run_suite(c);
  CHECK(r.find("curl.plane_disk.rotation")->tol == 3.0);
  CHECK(r.find("curl.plane_disk.constant")->tol == 2.0);
}

TEST_CASE("every suite passes on its default geometries in both derivative modes") {
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    SuiteConfig c = config("all");
    c.derivatives.mode = mode;
    const VerificationReport r = run_suite(c);
    for (const auto& check : r.checks) {
      INFO(check.id, " ", check.error, " measured ", check.measured(), " tol ", check.tol);
      CHECK(check.pass);
    }
  }
}

TEST_CASE("convergence tables") {
  const auto rows = convergence_table(config("all"), {4, 8, 16}, {1e-4, 1e-5});
  int exp_rows = 0;
  double previous = 1.0;
  for (const auto& r : rows) {
    if (r.check != "sphere.exp_z") continue;
    ++exp_rows;
    CHECK(r.error < previous);
    CHECK(r.monotone);
    previous = r.error;
  }
  CHECK(exp_rows == 3);
  const std::string csv = convergence_csv(rows);
  CHECK(csv.rfind("check,parameter,value,error,monotone\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rows.size()) + 1);
  CHECK_THROWS_AS(convergence_table(config("all"), {8}, {}), ConfigError);

  SuiteConfig analytic = config("all");
  analytic.derivatives.mode = DerivativeMode::analytic;
  for (const auto& r : convergence_table(analytic, {4, 8}, {1e-4, 1e-5, 1e-6}))
    if (r.check == "sphere.mean_curvature") CHECK(r.error <= 1e-9);
}
