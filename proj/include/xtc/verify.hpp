#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xtc/atlas.hpp"
#include "xtc/derivative_engine.hpp"
#include "xtc/registry.hpp"

namespace xtc {

inline constexpr int kReportSchema = 1;

struct SuiteConfig {
  std::string suite = "all";
  // Empty runs every check on its own default geometry.
  std::string geometry;
  GeometryParams geometry_params;
  QuadratureSettings quadrature;
  DerivativeSettings derivatives;
  // Keyed by check id or by a dotted id prefix such as "stokes.hemisphere".
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  std::string out;
};

const std::vector<std::string>& suite_names();
// Throws ConfigError for unknown names, non-positive parameters and the like.
void validate(const SuiteConfig& config);

enum class Metric { abs, rel };
enum class Criterion { at_most, at_least };

std::string to_string(Metric m);
std::string to_string(Criterion c);

struct CheckRecord {
  std::string id;
  std::string identity;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double abs = 0.0;
  double rel = 0.0;
  Metric metric = Metric::abs;
  Criterion criterion = Criterion::at_most;
  double tol = 0.0;
  bool pass = false;
  // Set when the check raised instead of producing a residual.
  std::string error;

  double measured() const { return metric == Metric::abs ? abs : rel; }
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<CheckRecord> checks;
  double wall_time_s = 0.0;

  bool pass() const;
  const CheckRecord* find(const std::string& id) const;
};

VerificationReport run_suite(const SuiteConfig& config);

// Two-space indented JSON; the wall time is omitted when include_wall_time is false.
std::string report_json(const VerificationReport& report, bool include_wall_time = true);

struct ConvergenceRow {
  std::string check;
  std::string parameter;
  double value = 0.0;
  double error = 0.0;
  bool monotone = false;
};

// Quadrature studies over orders and finite-difference studies over h_x.
std::vector<ConvergenceRow> convergence_table(const SuiteConfig& base, const std::vector<int>& orders,
                                              const std::vector<double>& steps);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

std::string list_suites_text();
std::string list_geometries_text();

}  // namespace xtc
