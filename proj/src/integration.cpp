#include "xtc/integration.hpp"

#include <algorithm>

#include "xtc/errors.hpp"
#include "xtc/quadrature.hpp"

namespace xtc {

Tensor integrate(const Atlas& atlas, const TensorField& f, double t) {
  if (f.dim() != atlas.geometry().dim()) throw ShapeError("integrate: field dimension differs from the atlas");
  const auto nodes = atlas.nodes(t);
  if (nodes.empty()) throw ShapeError("integrate: atlas has no quadrature nodes");
  std::vector<Tensor> parts;
  parts.reserve(nodes.size());
  for (const auto& node : nodes) parts.push_back(node.weight * f(node.x, t));
  return pairwise_sum(parts);
}

Tensor integrate_boundary(const Atlas& atlas, const Calculus& calc,
                          const std::function<Tensor(const BoundaryNode&)>& integrand,
                          TensorShape shape, double t) {
  const auto nodes = atlas.boundary_nodes(calc, t);
  if (nodes.empty()) return Tensor(shape.dim, shape.rank);
  std::vector<Tensor> parts;
  parts.reserve(nodes.size());
  for (const auto& node : nodes) {
    Tensor v = integrand(node);
    if (v.rank() != shape.rank) throw ShapeError("integrate_boundary: integrand rank differs from shape");
    parts.push_back(node.weight * v);
  }
  return pairwise_sum(parts);
}

Tensor endpoint_difference(const Atlas& atlas, const TensorField& f, double t) {
  Tensor acc(f.dim(), f.rank());
  for (const auto& chart : atlas.charts()) {
    if (chart.param_dim() != 1) throw ShapeError("endpoint_difference needs path charts");
    for (const auto& face : chart.faces()) {
      const double u = face.upper ? chart.axes()[0].hi : chart.axes()[0].lo;
      const Point x = chart(std::span<const double>(&u, 1), t);
      acc += (face.upper ? 1.0 : -1.0) * f(x, t);
    }
  }
  return acc;
}

const Tensor& IdentityResidual::term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return t.value;
  throw std::out_of_range("no term named " + name);
}

IdentityResidual make_residual(Tensor lhs, Tensor rhs, std::vector<NamedTerm> terms) {
  IdentityResidual r;
  r.abs = norm(lhs - rhs);
  r.rel = r.abs / std::max({1.0, norm(lhs), norm(rhs)});
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.terms = std::move(terms);
  return r;
}

namespace {

TensorShape lowered(const TensorField& f, int by) { return {f.dim(), f.rank() - by}; }

}  // namespace

IdentityResidual stokes_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                 double time) {
  if (t.rank() < 1) throw ShapeError("stokes_residual: rank >= 1 required");
  const TensorField field = calc.on_tube(t);
  Tensor interior = integrate(atlas, calc.divergence(field), time);
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return insert_right(field(b.x, time), b.conormal); },
      lowered(t, 1), time);
  Tensor curvature = integrate(atlas, insert_right_field(field, calc.mean_curvature()), time);
  Tensor rhs = boundary + curvature;
  return make_residual(interior, rhs,
                       {{"interior", interior}, {"boundary", boundary}, {"curvature", curvature}});
}

IdentityResidual circulation_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                      double time) {
  if (atlas.geometry().manifold_dim() != 2) throw ShapeError("circulation needs a two-dimensional manifold");
  const TensorField field = calc.on_tube(t);
  Tensor interior = integrate(atlas, calc.curl(field), time);
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return insert_right(field(b.x, time), b.tau); },
      lowered(t, 1), time);
  return make_residual(interior, boundary, {{"interior", interior}, {"boundary", boundary}});
}

IdentityResidual integration_by_parts_residual(const Calculus& calc, const Atlas& atlas,
                                               const TensorField& s, const TensorField& t,
                                               double time) {
  if (s.rank() >= t.rank()) throw ShapeError("integration_by_parts: rank(S) < rank(T) required");
  const TensorField sf = calc.on_tube(s);
  const TensorField tf = calc.on_tube(t);
  const TensorShape out = lowered(t, s.rank() + 1);
  Tensor lhs = integrate(atlas, contract_left_field(sf, calc.divergence(tf)), time);
  const TensorField pair = bilinear_field(
      [](const Tensor& a, const Tensor& g) { return contract_gradient_pair(a, g); }, tf,
      calc.surface_gradient(sf), out, "pair");
  Tensor gradient = integrate(atlas, pair, time);
  const TensorField st = contract_left_field(sf, tf);
  Tensor boundary = integrate_boundary(
      atlas, calc, [&](const BoundaryNode& b) { return insert_right(st(b.x, time), b.conormal); }, out,
      time);
  Tensor curvature = integrate(atlas, insert_right_field(st, calc.mean_curvature()), time);
  Tensor rhs = boundary + curvature - gradient;
  return make_residual(lhs, rhs,
                       {{"gradient", gradient}, {"boundary", boundary}, {"curvature", curvature}});
}

IdentityResidual path_ftc_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                   double time) {
  if (atlas.geometry().manifold_dim() != 1) throw ShapeError("path_ftc needs a one-dimensional manifold");
  const TensorField grad = calc.surface_gradient(t);
  std::vector<Tensor> parts;
  for (const auto& node : atlas.nodes(time)) {
    const Vector& j = node.tangents[0];
    // weight already carries |J|, so dividing by it leaves grad . J du.
    parts.push_back((node.weight / norm(j)) * insert_right(grad(node.x, time), j));
  }
  Tensor lhs = pairwise_sum(parts);
  Tensor rhs = endpoint_difference(atlas, calc.on_tube(t), time);
  return make_residual(lhs, rhs);
}

IdentityResidual weak_form_residual(const Calculus& calc, const Atlas& atlas, const TensorField& t,
                                    const TensorField& s, const TensorField& f, const TensorField* q,
                                    double time) {
  const int n = atlas.geometry().dim();
  Tensor a = integrate(atlas, frobenius_field(calc.covariant_gradient(t), calc.covariant_gradient(s)), time);
  Tensor load = integrate(atlas, frobenius_field(calc.on_tube(s), f), time);
  Tensor flux(n, 0);
  if (q) {
    const TensorField sf = calc.on_tube(s);
    flux = integrate_boundary(
        atlas, calc,
        [&](const BoundaryNode& b) { return Tensor::scalar(frobenius(sf(b.x, time), (*q)(b.x, time)), n); },
        {n, 0}, time);
  }
  Tensor rhs = load + flux;
  return make_residual(a, rhs, {{"load", load}, {"flux", flux}});
}

}  // namespace xtc
