#pragma once

#include "xtc/derivative_engine.hpp"
#include "xtc/field.hpp"
#include "xtc/geometry.hpp"

namespace xtc {

// Differential operators on a level-set submanifold. Every operator returns a
// derived field so that operators compose; the derivative slot is always the
// deepest one.
class Calculus {
 public:
  Calculus(GeometryPtr geometry, DerivativeEngine engine);

  const LevelSetGeometry& geometry() const { return *frames_.geometry(); }
  const GeometryPtr& geometry_ptr() const { return frames_.geometry(); }
  const DerivativeEngine& engine() const { return frames_.engine(); }
  const FrameFields& frames() const { return frames_; }
  GeometryFrame frame(std::span<const double> x, double t = 0.0) const { return frames_.frame(x, t); }

  // Restricts a field to the tube so that stencils leaving it are reported.
  TensorField on_tube(const TensorField& f) const;

  TensorField gradient(const TensorField& f) const;
  TensorField surface_gradient(const TensorField& f) const;
  TensorField divergence(const TensorField& f) const;
  TensorField mean_curvature() const;

  TensorField projected(const TensorField& f) const;
  TensorField covariant_gradient(const TensorField& f) const;
  TensorField laplacian(const TensorField& f) const;
  TensorField covariant_laplacian(const TensorField& f) const;
  TensorField shape_operator(int i) const;

  // Dagger applied to the deepest slot.
  TensorField dagger(const TensorField& f) const;
  // Rank q -> q-1, Curl T = -Div_M(T dagger).
  TensorField curl(const TensorField& f) const;
  // Rank q -> q+1, dagger applied to the derivative slot of grad_M T.
  TensorField vector_curl(const TensorField& f) const;

  TensorField time_derivative(const TensorField& f) const;
  // D_w T = d_t T + grad T . w
  TensorField material_derivative(const TensorField& f, const TensorField& w) const;
  // C[w] = 1/2 sum_i (D_w n_i (x) n_i + n_i (x) D_w n_i)
  TensorField projector_rate(const TensorField& w) const;

 private:
  FrameFields frames_;
};

}  // namespace xtc
