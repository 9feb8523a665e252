#pragma once

#include <array>
#include <span>
#include <string>

#include "xtc/field.hpp"

namespace xtc {

enum class DerivativeMode { fd2, fd4, analytic };

DerivativeMode parse_derivative_mode(const std::string& name);
std::string to_string(DerivativeMode mode);

inline constexpr int kMaxNesting = 3;

struct DerivativeSettings {
  DerivativeMode mode = DerivativeMode::fd2;
  // Innermost spatial step, scaled by max(1, |x|); 0 selects the scheme default.
  double h_x = 0.0;
  // Innermost time step; 0 selects the scheme default.
  double h_t = 0.0;
};

// Cartesian and time derivatives of ambient fields. In analytic mode exact
// derivatives are used whenever a field provides them, with fourth-order
// differences as fallback. Steps grow with the number of finite-difference
// derivatives already nested inside the field.
class DerivativeEngine {
 public:
  DerivativeEngine() : DerivativeEngine(DerivativeSettings{}) {}
  explicit DerivativeEngine(DerivativeSettings settings);

  const DerivativeSettings& settings() const { return settings_; }
  DerivativeMode mode() const { return settings_.mode; }
  bool analytic() const { return settings_.mode == DerivativeMode::analytic; }
  int fd_order() const { return settings_.mode == DerivativeMode::fd2 ? 2 : 4; }

  double spatial_step(int depth, std::span<const double> x) const;
  double time_step(int depth) const;

  // Rank q+1 tensor with the derivative slot last.
  Tensor gradient(const TensorField& f, std::span<const double> x, double t = 0.0) const;
  Tensor time_derivative(const TensorField& f, std::span<const double> x, double t = 0.0) const;
  // Directional derivative of f along v (a rank-q tensor).
  Tensor directional(const TensorField& f, std::span<const double> x, double t,
                     std::span<const double> v) const;

  TensorField gradient_field(const TensorField& f) const;
  TensorField time_derivative_field(const TensorField& f) const;

 private:
  Tensor fd_gradient(const TensorField& f, std::span<const double> x, double t) const;
  Tensor fd_time(const TensorField& f, std::span<const double> x, double t) const;

  DerivativeSettings settings_;
  std::array<double, kMaxNesting> space_ratio_{};
  std::array<double, kMaxNesting> time_ratio_{};
  double h_x_ = 0.0;
  double h_t_ = 0.0;
};

}  // namespace xtc
