#include "xtc/derivative_engine.hpp"

#include <algorithm>
#include <cmath>

#include "xtc/errors.hpp"

namespace xtc {

DerivativeMode parse_derivative_mode(const std::string& name) {
  if (name == "fd2") return DerivativeMode::fd2;
  if (name == "fd4") return DerivativeMode::fd4;
  if (name == "analytic") return DerivativeMode::analytic;
  throw ConfigError("unknown derivative mode '" + name + "' (expected fd2, fd4 or analytic)");
}

std::string to_string(DerivativeMode mode) {
  switch (mode) {
    case DerivativeMode::fd2: return "fd2";
    case DerivativeMode::fd4: return "fd4";
    case DerivativeMode::analytic: return "analytic";
  }
  return "fd2";
}

DerivativeEngine::DerivativeEngine(DerivativeSettings settings) : settings_(settings) {
  if (settings_.h_x < 0.0 || settings_.h_t < 0.0) throw ConfigError("negative finite-difference step");
  if (settings_.mode == DerivativeMode::fd2) {
    h_x_ = settings_.h_x > 0.0 ? settings_.h_x : 5e-6;
    h_t_ = settings_.h_t > 0.0 ? settings_.h_t : 1e-5;
    space_ratio_ = {1.0, 20.0, 200.0};
    time_ratio_ = {1.0, 30.0, 300.0};
  } else {
    h_x_ = settings_.h_x > 0.0 ? settings_.h_x : 5e-4;
    h_t_ = settings_.h_t > 0.0 ? settings_.h_t : 1e-3;
    space_ratio_ = {1.0, 5.0, 20.0};
    time_ratio_ = {1.0, 5.0, 20.0};
  }
}

double DerivativeEngine::spatial_step(int depth, std::span<const double> x) const {
  if (depth < 0 || depth >= kMaxNesting)
    throw NumericalError("finite-difference nesting depth " + std::to_string(depth + 1) +
                         " exceeds " + std::to_string(kMaxNesting));
  return h_x_ * space_ratio_[depth] * std::max(1.0, norm(x));
}

double DerivativeEngine::time_step(int depth) const {
  if (depth < 0 || depth >= kMaxNesting)
    throw NumericalError("finite-difference nesting depth " + std::to_string(depth + 1) +
                         " exceeds " + std::to_string(kMaxNesting));
  return h_t_ * time_ratio_[depth];
}

Tensor DerivativeEngine::gradient(const TensorField& f, std::span<const double> x, double t) const {
  if (analytic() && f.has_gradient()) return f.gradient()(x, t);
  return fd_gradient(f, x, t);
}

Tensor DerivativeEngine::time_derivative(const TensorField& f, std::span<const double> x,
                                         double t) const {
  if (analytic() && f.has_time_derivative()) return f.time_derivative()(x, t);
  return fd_time(f, x, t);
}

Tensor DerivativeEngine::directional(const TensorField& f, std::span<const double> x, double t,
                                     std::span<const double> v) const {
  return insert_right(gradient(f, x, t), v);
}

namespace {

Tensor sample(const TensorField& f, std::span<const double> x, double t) {
  if (!f.contains(x, t))
    throw StencilError("finite-difference stencil leaves the domain of field '" + f.label() +
                       "' at " + format_point(x, t));
  return f(x, t);
}

}  // namespace

Tensor DerivativeEngine::fd_gradient(const TensorField& f, std::span<const double> x,
                                     double t) const {
  const int n = f.dim();
  const double h = spatial_step(f.fd_depth(), x);
  const int order = fd_order();
  std::vector<Tensor> parts;
  parts.reserve(n);
  Vector y(x.begin(), x.end());
  for (int c = 0; c < n; ++c) {
    const double xc = x[c];
    auto at = [&](double s) {
      y[c] = xc + s * h;
      Tensor v = sample(f, y, t);
      y[c] = xc;
      return v;
    };
    if (order == 2) {
      parts.push_back((0.5 / h) * (at(1.0) - at(-1.0)));
    } else {
      Tensor d = 8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0));
      parts.push_back((1.0 / (12.0 * h)) * d);
    }
  }
  return stack_last(parts);
}

Tensor DerivativeEngine::fd_time(const TensorField& f, std::span<const double> x, double t) const {
  const double h = time_step(f.fd_depth());
  auto at = [&](double s) { return sample(f, x, t + s * h); };
  if (fd_order() == 2) return (0.5 / h) * (at(1.0) - at(-1.0));
  Tensor d = 8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0));
  return (1.0 / (12.0 * h)) * d;
}

TensorField DerivativeEngine::gradient_field(const TensorField& f) const {
  if (analytic() && f.has_gradient()) return f.gradient();
  if (f.fd_depth() >= kMaxNesting)
    throw NumericalError("field '" + f.label() + "' already nests " + std::to_string(f.fd_depth()) +
                         " finite-difference derivatives");
  const DerivativeEngine self = *this;
  TensorField g({f.dim(), f.rank() + 1},
                [self, f](std::span<const double> x, double t) { return self.fd_gradient(f, x, t); },
                "fd grad " + f.label());
  return g.with_domain(f.domain()).with_depth(f.fd_depth() + 1);
}

TensorField DerivativeEngine::time_derivative_field(const TensorField& f) const {
  if (analytic() && f.has_time_derivative()) return f.time_derivative();
  if (f.fd_depth() >= kMaxNesting)
    throw NumericalError("field '" + f.label() + "' already nests " + std::to_string(f.fd_depth()) +
                         " finite-difference derivatives");
  const DerivativeEngine self = *this;
  TensorField g(f.shape(),
                [self, f](std::span<const double> x, double t) { return self.fd_time(f, x, t); },
                "fd dt " + f.label());
  return g.with_domain(f.domain()).with_depth(f.fd_depth() + 1);
}

}  // namespace xtc
