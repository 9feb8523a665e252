#include <Eigen/Dense>

#include "xtc/applications.hpp"
#include "xtc/polynomial.hpp"

namespace xtc {

std::string GeneratorIndex::label() const { return "l" + std::to_string(i) + std::to_string(j); }

std::vector<GeneratorIndex> rotation_generators(int dim) {
  std::vector<GeneratorIndex> out;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) out.push_back({i, j});
  return out;
}

TensorField rotation_generator(int dim, GeneratorIndex k) {
  if (k.i < 0 || k.j >= dim || k.i >= k.j) throw ShapeError("generator index must satisfy 0 <= i < j < n");
  PolynomialTensor p{{dim, 1}, std::vector<Polynomial>(dim, Polynomial(dim))};
  p.leaves[k.j] = Polynomial::variable(dim, k.i);
  Polynomial minus(dim);
  std::vector<int> powers(dim + 1, 0);
  powers[k.j] = 1;
  minus.add_term(-1.0, powers);
  p.leaves[k.i] = minus;
  return polynomial_field(p, k.label());
}

TensorField generator_projection(const Calculus& calc, GeneratorIndex k) {
  const int n = calc.geometry().dim();
  return linear_field(
      [k, n](const Tensor& proj) {
        Tensor w(n, 2);
        for (int b = 0; b < n; ++b) {
          w[k.i * n + b] += proj[k.j * n + b];
          w[k.j * n + b] -= proj[k.i * n + b];
        }
        return w;
      },
      calc.frames().projector(), {n, 2}, "omega " + k.label());
}

Tensor stress_force(const Calculus& calc, const Atlas& atlas, const TensorField& sigma, double t) {
  const int n = calc.geometry().dim();
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return insert_left(sigma(b.x, t), b.conormal); }, {n, 1}, t);
  return boundary + integrate(atlas, insert_left_field(sigma, calc.mean_curvature()), t);
}

Tensor stress_torque(const Calculus& calc, const Atlas& atlas, const TensorField& sigma, GeneratorIndex k,
                     double t) {
  const int n = calc.geometry().dim();
  const TensorField l = rotation_generator(n, k);
  Tensor boundary = integrate_boundary(
      atlas, calc,
      [&](const BoundaryNode& b) {
        return Tensor::scalar(dot(l(b.x, t).leaves(), insert_left(sigma(b.x, t), b.conormal).leaves()), n);
      },
      {n, 0}, t);
  return boundary + integrate(atlas, frobenius_field(l, insert_left_field(sigma, calc.mean_curvature())), t);
}

IdentityResidual torque_equivalence_residual(const Calculus& calc, const Atlas& atlas,
                                             const TensorField& sigma, GeneratorIndex k, double t) {
  const int n = calc.geometry().dim();
  const TensorField bar = transpose_field(calc.on_tube(sigma));
  Tensor torque = stress_torque(calc, atlas, sigma, k, t);
  Tensor divergence = integrate(atlas, frobenius_field(rotation_generator(n, k), calc.divergence(bar)), t);
  Tensor coupling = integrate(atlas, frobenius_field(generator_projection(calc, k), bar), t);
  return make_residual(torque, divergence - coupling, {{"divergence", divergence}, {"coupling", coupling}});
}

IdentityResidual generator_identity_residual(const Calculus& calc, const Atlas& atlas, const TensorField& a,
                                             GeneratorIndex k, double t) {
  const int n = calc.geometry().dim();
  const TensorField af = calc.on_tube(a);
  const TensorField la = contract_left_field(rotation_generator(n, k), af);
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return insert_right(la(b.x, t), b.conormal); }, {n, 0}, t);
  Tensor curvature = integrate(atlas, insert_right_field(la, calc.mean_curvature()), t);
  Tensor divergence = integrate(atlas, frobenius_field(rotation_generator(n, k), calc.divergence(af)), t);
  Tensor coupling = integrate(atlas, frobenius_field(af, generator_projection(calc, k)), t);
  return make_residual(boundary + curvature, divergence - coupling,
                       {{"boundary", boundary}, {"curvature", curvature}, {"divergence", divergence},
                        {"coupling", coupling}});
}

double normal_at_tangential(const GeometryFrame& frame, const Tensor& sigma) {
  const int n = frame.dim();
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    const Tensor image = insert_left(sigma, frame.P.row(j).leaves());
    const Tensor normal_part = insert_right(frame.N, image.leaves());
    for (int k = 0; k < n; ++k) m(k, j) = normal_part[k];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

EquilibriumDiagnostics equilibrium_diagnostics(const Calculus& calc, const TensorField& sigma,
                                               std::span<const double> x, double t) {
  const int n = calc.geometry().dim();
  const TensorField bar = transpose_field(calc.on_tube(sigma));
  EquilibriumDiagnostics d;
  d.divergence = calc.divergence(bar)(x, t).data();
  const Tensor bar_x = bar(x, t);
  for (const auto& k : rotation_generators(n))
    d.generator_terms.push_back(frobenius(generator_projection(calc, k)(x, t), bar_x));
  d.normal_at_tangential = normal_at_tangential(calc.frame(x, t), sigma(x, t));
  return d;
}

}  // namespace xtc
