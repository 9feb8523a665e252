#include <algorithm>

#include "xtc/applications.hpp"

namespace xtc {

double dirichlet_energy(const Calculus& calc, const Atlas& atlas, const TensorField& f, double t) {
  const TensorField g = calc.surface_gradient(f);
  return 0.5 * integrate(atlas, frobenius_field(g, g), t).value();
}

double dirichlet_rate(const Calculus& calc, const Atlas& atlas, const TensorField& f, const TensorField& w,
                      double t) {
  const TensorField g = calc.surface_gradient(f);
  const TensorField transported = calc.surface_gradient(calc.material_derivative(f, w));
  const double first = integrate(atlas, frobenius_field(g, transported), t).value();
  const TensorField density = frobenius_field(g, g);
  const double stretch = 0.5 * integrate(atlas, outer_field(density, calc.divergence(w)), t).value();
  const TensorField sheared = bigcirc_field(g, calc.covariant_gradient(w));
  const double shear = integrate(atlas, frobenius_field(sheared, g), t).value();
  return first + stretch - shear;
}

double dirichlet_rate_fd(const Calculus& calc, const Atlas& atlas, const TensorField& f, const TensorField& w,
                         double t, double dt) {
  const double ahead = dirichlet_energy(calc, moved_atlas(atlas, w, t, dt), f, t + dt);
  const double behind = dirichlet_energy(calc, moved_atlas(atlas, w, t, -dt), f, t - dt);
  return (ahead - behind) / (2.0 * dt);
}

IdentityResidual reynolds_residual(const Calculus& calc, const Atlas& atlas, const TensorField& f,
                                   const TensorField& w, double t, double dt) {
  const TensorField field = calc.on_tube(f);
  const Tensor ahead = integrate(moved_atlas(atlas, w, t, dt), field, t + dt);
  const Tensor behind = integrate(moved_atlas(atlas, w, t, -dt), field, t - dt);
  Tensor rate = (1.0 / (2.0 * dt)) * (ahead - behind);
  Tensor transport = integrate(atlas, calc.material_derivative(field, w), t);
  Tensor stretch = integrate(atlas, outer_field(calc.divergence(w), field), t);
  return make_residual(rate, transport + stretch, {{"transport", transport}, {"stretch", stretch}});
}

CommutatorResidual commutator_residuals(const Calculus& calc, const Atlas& atlas, const TensorField& f,
                                        const TensorField& w, double t) {
  const TensorField grad = calc.gradient(f);
  const TensorField grad_w = calc.gradient(w);
  const TensorField df = calc.material_derivative(f, w);
  const TensorField ambient = difference_field(
      difference_field(calc.gradient(df), calc.material_derivative(grad, w)), bigcirc_field(grad, grad_w));

  const TensorField c = calc.projector_rate(w);
  const TensorField correction = sum_field(scaled_field(2.0, c), calc.surface_gradient(w));
  const TensorField sub = difference_field(
      difference_field(calc.surface_gradient(df), calc.material_derivative(calc.surface_gradient(f), w)),
      bigcirc_field(grad, correction));

  CommutatorResidual r;
  r.ambient = max_norm_over_nodes(atlas, ambient, t);
  r.submanifold = max_norm_over_nodes(atlas, sub, t);
  r.projected_rate = max_norm_over_nodes(atlas, calc.projected(c), t);
  r.projector_rate = max_norm_over_nodes(
      atlas, sum_field(calc.material_derivative(calc.frames().projector(), w), scaled_field(2.0, c)), t);
  for (int i = 0; i < calc.geometry().codim(); ++i) {
    const TensorField& ni = calc.frames().normal(i);
    r.normal_rate = std::max(
        r.normal_rate,
        max_norm_over_nodes(atlas, sum_field(calc.material_derivative(ni, w), contract_left_field(ni, grad_w)), t));
  }
  return r;
}

}  // namespace xtc
