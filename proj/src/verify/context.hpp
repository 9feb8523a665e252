#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "xtc/applications.hpp"
#include "xtc/polynomial.hpp"
#include "xtc/verify.hpp"

namespace xtc::suites {

struct Outcome {
  std::vector<double> lhs;
  std::vector<double> rhs;
  double abs = 0.0;
  double rel = 0.0;
  Metric metric = Metric::abs;
  Criterion criterion = Criterion::at_most;
};

// |lhs - rhs| with rel against max(1, |lhs|, |rhs|).
Outcome compare(const Tensor& lhs, const Tensor& rhs, Metric metric);
Outcome compare(double lhs, double rhs, Metric metric);
// |value - reference| with rel against |reference|.
Outcome against(const Tensor& value, const Tensor& reference, Metric metric);
Outcome against(double value, double reference, Metric metric);
Outcome from_residual(const IdentityResidual& r, Metric metric);
// A nonnegative quantity that must stay below the tolerance.
Outcome bound(double value);
// A nonnegative quantity that must reach the tolerance.
Outcome at_least(double value);

// Keeps the sample with the largest residual.
class Worst {
 public:
  explicit Worst(Metric metric) : metric_(metric) {}
  void add(const Outcome& o);
  void add(const Tensor& lhs, const Tensor& rhs) { add(compare(lhs, rhs, metric_)); }
  void add_against(const Tensor& value, const Tensor& reference) { add(against(value, reference, metric_)); }
  Outcome result() const;

 private:
  Metric metric_;
  Outcome worst_;
  bool any_ = false;
};

class Context {
 public:
  Context(const SuiteConfig& config, std::vector<CheckRecord>& out);

  const SuiteConfig& config() const { return config_; }
  const DerivativeEngine& engine() const { return engine_; }
  bool analytic_mode() const { return engine_.analytic(); }

  // True when no geometry is selected or the selected one is name.
  bool selects(const std::string& name) const;
  // Built-in geometry; the configured parameters apply to the selected one.
  GeometryInstance geometry(const std::string& name, GeometryParams params = {}) const;
  // The selected geometry if it passes the filter, otherwise the defaults.
  std::vector<std::string> geometries(const std::vector<std::string>& defaults,
                                      const std::function<bool(const GeometryInstance&)>& accept = {}) const;

  double pick(double fd, double analytic) const { return analytic_mode() ? analytic : fd; }
  // Configured override for an id, else the finite-difference or analytic default.
  double tolerance(const std::string& id, double fd, double analytic) const;

  std::mt19937_64 rng(const std::string& id) const;

  void check(const std::string& id, const std::string& identity, double tol,
             const std::function<Outcome(std::mt19937_64&)>& body);

 private:
  const SuiteConfig& config_;
  std::vector<CheckRecord>& out_;
  DerivativeEngine engine_;
};

// Random points on M taken through the atlas charts, away from chart edges.
std::vector<Point> sample_points(const GeometryInstance& g, std::mt19937_64& rng, int count, double t = 0.0);
// Random tensor with leaves in [-1, 1].
Tensor random_tensor(int dim, int rank, std::mt19937_64& rng);
Vector random_vector(int dim, std::mt19937_64& rng);
TensorField random_field(int dim, int rank, std::mt19937_64& rng, int degree = 2, int time_degree = 0);

bool is_surface(const GeometryInstance& g);
bool has_boundary(const GeometryInstance& g);
bool is_static(const GeometryInstance& g);

void algebra(Context& ctx);
void projection(Context& ctx);
void differential_identities(Context& ctx);
void stokes(Context& ctx);
void curl(Context& ctx);
void laplacian(Context& ctx);
void euler(Context& ctx);
void stress(Context& ctx);
void evolving(Context& ctx);

}  // namespace xtc::suites
