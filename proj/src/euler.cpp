#include <algorithm>

#include "xtc/applications.hpp"

namespace xtc {

double max_norm_over_nodes(const Atlas& atlas, const TensorField& f, double t) {
  double worst = 0.0;
  for (const auto& node : atlas.nodes(t)) worst = std::max(worst, norm(f(node.x, t)));
  return worst;
}

EulerResidual euler_residual(const Calculus& calc, const Atlas& atlas, const FlowState& state, double t) {
  const TensorField& u = state.velocity;
  const TensorField& p = state.pressure;
  const TensorField advection = insert_right_field(calc.covariant_gradient(u), u);
  const TensorField pressure_force = calc.surface_gradient(p);
  const TensorField dt_u = calc.time_derivative(u);
  const TensorField momentum = sum_field(dt_u, sum_field(advection, pressure_force));
  const TensorField flux = sum_field(outer_field(u, u), outer_field(p, calc.frames().projector()));
  const TensorField div_form = calc.projected(calc.divergence(flux));

  EulerResidual r;
  r.momentum = max_norm_over_nodes(atlas, momentum, t);
  r.divergence = max_norm_over_nodes(atlas, calc.divergence(u), t);
  r.divergence_form = max_norm_over_nodes(atlas, sum_field(dt_u, div_form), t);
  r.form_identity = max_norm_over_nodes(
      atlas, difference_field(div_form, sum_field(advection, pressure_force)), t);
  for (const auto& b : atlas.boundary_nodes(calc, t))
    r.boundary_slip = std::max(r.boundary_slip, std::abs(dot(u(b.x, t).leaves(), b.conormal)));
  return r;
}

Tensor extrinsic_momentum(const Atlas& atlas, const FlowState& state, double t) {
  return integrate(atlas, outer_field(state.density, state.velocity), t);
}

IdentityResidual tangent_velocity_residual(const Calculus& calc, const Atlas& atlas, const TensorField& u,
                                           double t) {
  const int n = calc.geometry().dim();
  const TensorField pu = insert_right_field(calc.frames().projector(), calc.on_tube(u));
  const TensorField r = position_field(n);
  Tensor lhs = integrate(atlas, pu, t);
  Tensor interior = integrate(atlas, outer_field(calc.divergence(pu), r), t);
  Tensor boundary = integrate_boundary(
      atlas, calc,
      [&](const BoundaryNode& b) { return dot(u(b.x, t).leaves(), b.conormal) * Tensor::covector(b.x); },
      {n, 1}, t);
  return make_residual(lhs, boundary - interior, {{"interior", interior}, {"boundary", boundary}});
}

IdentityResidual force_balance_residual(const Calculus& calc, const Atlas& atlas, const FlowState& state,
                                        double t) {
  const int n = calc.geometry().dim();
  const TensorField& u = state.velocity;
  const TensorField& p = state.pressure;
  Tensor curvature = integrate(atlas, outer_field(p, calc.mean_curvature()), t);
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return p(b.x, t).value() * Tensor::covector(b.conormal); },
      {n, 1}, t);
  Tensor shape(n, 1);
  for (int i = 0; i < calc.geometry().codim(); ++i) {
    const TensorField bu = insert_right_field(insert_left_field(calc.shape_operator(i), u), u);
    shape += integrate(atlas, outer_field(bu, calc.frames().normal(i)), t);
  }
  Tensor lhs = curvature + boundary;
  return make_residual(lhs, -shape, {{"curvature", curvature}, {"boundary", boundary}, {"shape", shape}});
}

}  // namespace xtc
