#include "context.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xtc/errors.hpp"

namespace xtc::suites {

Outcome compare(const Tensor& lhs, const Tensor& rhs, Metric metric) {
  Outcome o;
  o.lhs = lhs.data();
  o.rhs = rhs.data();
  o.abs = norm(lhs - rhs);
  o.rel = o.abs / std::max({1.0, norm(lhs), norm(rhs)});
  o.metric = metric;
  return o;
}

Outcome compare(double lhs, double rhs, Metric metric) {
  return compare(Tensor::scalar(lhs), Tensor::scalar(rhs), metric);
}

Outcome against(const Tensor& value, const Tensor& reference, Metric metric) {
  Outcome o = compare(value, reference, metric);
  const double scale = norm(reference);
  o.rel = scale > 0.0 ? o.abs / scale : o.abs;
  return o;
}

Outcome against(double value, double reference, Metric metric) {
  return against(Tensor::scalar(value), Tensor::scalar(reference), metric);
}

Outcome from_residual(const IdentityResidual& r, Metric metric) {
  Outcome o;
  o.lhs = r.lhs.data();
  o.rhs = r.rhs.data();
  o.abs = r.abs;
  o.rel = r.rel;
  o.metric = metric;
  return o;
}

Outcome bound(double value) {
  Outcome o;
  o.lhs = {value};
  o.rhs = {0.0};
  o.abs = o.rel = std::abs(value);
  return o;
}

Outcome at_least(double value) {
  Outcome o = bound(value);
  o.criterion = Criterion::at_least;
  return o;
}

void Worst::add(const Outcome& o) {
  const double v = metric_ == Metric::abs ? o.abs : o.rel;
  const double w = metric_ == Metric::abs ? worst_.abs : worst_.rel;
  if (!any_ || v > w || std::isnan(v)) {
    worst_ = o;
    worst_.metric = metric_;
    any_ = true;
  }
}

Outcome Worst::result() const {
  if (!any_) throw NumericalError("no samples were evaluated");
  return worst_;
}

Context::Context(const SuiteConfig& config, std::vector<CheckRecord>& out)
    : config_(config), out_(out), engine_(config.derivatives) {}

bool Context::selects(const std::string& name) const {
  return config_.geometry.empty() || config_.geometry == name;
}

GeometryInstance Context::geometry(const std::string& name, GeometryParams params) const {
  if (!config_.geometry.empty() && config_.geometry == name)
    for (const auto& [k, v] : config_.geometry_params) params[k] = v;
  return make_geometry(name, params, config_.quadrature);
}

std::vector<std::string> Context::geometries(const std::vector<std::string>& defaults,
                                             const std::function<bool(const GeometryInstance&)>& accept) const {
  if (config_.geometry.empty()) return defaults;
  if (accept && !accept(geometry(config_.geometry))) return {};
  return {config_.geometry};
}

double Context::tolerance(const std::string& id, double fd, double analytic) const {
  // The longest matching key wins, so a full id beats a prefix.
  const std::string* best = nullptr;
  double value = engine_.analytic() ? analytic : fd;
  for (const auto& [key, tol] : config_.tolerances) {
    const bool match = id == key || (id.size() > key.size() && id.compare(0, key.size(), key) == 0 &&
                                      id[key.size()] == '.');
    if (match && (!best || key.size() > best->size())) {
      best = &key;
      value = tol;
    }
  }
  return value;
}

std::mt19937_64 Context::rng(const std::string& id) const {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(config_.seed),
                                   static_cast<std::uint32_t>(config_.seed >> 32)};
  for (char c : id) words.push_back(static_cast<unsigned char>(c));
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

void Context::check(const std::string& id, const std::string& identity, double tol,
                    const std::function<Outcome(std::mt19937_64&)>& body) {
  CheckRecord r;
  r.id = id;
  r.identity = identity;
  r.tol = tolerance(id, tol, tol);
  auto gen = rng(id);
  try {
    const Outcome o = body(gen);
    r.lhs = o.lhs;
    r.rhs = o.rhs;
    r.abs = o.abs;
    r.rel = o.rel;
    r.metric = o.metric;
    r.criterion = o.criterion;
    const double m = r.measured();
    r.pass = std::isfinite(m) && (r.criterion == Criterion::at_most ? m <= r.tol : m >= r.tol);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.abs = r.rel = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
  }
  out_.push_back(std::move(r));
}

std::vector<Point> sample_points(const GeometryInstance& g, std::mt19937_64& rng, int count, double t) {
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const auto& charts = g.atlas.charts();
  std::vector<Point> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const Chart& chart = charts[k % charts.size()];
    std::vector<double> u;
    for (const auto& axis : chart.axes()) u.push_back(axis.lo + unit(rng) * (axis.hi - axis.lo));
    out.push_back(chart(u, t));
  }
  return out;
}

Tensor random_tensor(int dim, int rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Tensor t(dim, rank);
  for (double& v : t.leaves()) v = coeff(rng);
  return t;
}

Vector random_vector(int dim, std::mt19937_64& rng) { return random_tensor(dim, 1, rng).data(); }

TensorField random_field(int dim, int rank, std::mt19937_64& rng, int degree, int time_degree) {
  return polynomial_field(random_polynomial_tensor(dim, rank, degree, rng, time_degree), "random");
}

bool is_surface(const GeometryInstance& g) { return g.geometry->manifold_dim() == 2; }
bool has_boundary(const GeometryInstance& g) { return !g.atlas.closed(); }
bool is_static(const GeometryInstance& g) { return !g.geometry->time_dependent(); }

}  // namespace xtc::suites
