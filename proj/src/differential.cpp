#include "xtc/differential.hpp"

namespace xtc {

Calculus::Calculus(GeometryPtr geometry, DerivativeEngine engine)
    : frames_(std::move(geometry), engine) {}

TensorField Calculus::on_tube(const TensorField& f) const {
  if (f.dim() != geometry().dim()) throw ShapeError("field dimension does not match the geometry");
  return f.with_domain(intersect_domains(f.domain(), geometry().tube()));
}

TensorField Calculus::gradient(const TensorField& f) const {
  return engine().gradient_field(on_tube(f));
}

TensorField Calculus::surface_gradient(const TensorField& f) const {
  return bigcirc_field(gradient(f), frames_.projector()).with_label("grad_M " + f.label());
}

TensorField Calculus::divergence(const TensorField& f) const {
  if (f.rank() < 1) throw ShapeError("divergence of a rank-0 field");
  return trace_last_two_field(surface_gradient(f)).with_label("div_M " + f.label());
}

TensorField Calculus::mean_curvature() const {
  return divergence(frames_.normal_projector()).with_label("kappa");
}

TensorField Calculus::projected(const TensorField& f) const {
  if (f.rank() == 0) return f;
  const TensorField p = frames_.projector();
  TensorField chain = on_tube(f);
  for (int k = 0; k < f.rank(); ++k) chain = map_slot_field(chain, k, p);
  const FrameFields frames = frames_;
  const TensorField inner = on_tube(f);
  TensorField r(f.shape(),
                [frames, inner](std::span<const double> x, double t) {
                  return project(frames.frame(x, t), inner(x, t));
                },
                "proj " + f.label());
  r = r.with_domain(chain.domain()).with_depth(chain.fd_depth());
  if (chain.has_gradient()) r = r.with_gradient([chain] { return chain.gradient(); });
  if (chain.has_time_derivative())
    r = r.with_time_derivative([chain] { return chain.time_derivative(); });
  return r;
}

TensorField Calculus::covariant_gradient(const TensorField& f) const {
  return projected(surface_gradient(f)).with_label("grad_cov " + f.label());
}

TensorField Calculus::laplacian(const TensorField& f) const {
  return divergence(surface_gradient(f)).with_label("lap_M " + f.label());
}

TensorField Calculus::covariant_laplacian(const TensorField& f) const {
  return projected(divergence(covariant_gradient(f))).with_label("lap_cov " + f.label());
}

TensorField Calculus::shape_operator(int i) const {
  return surface_gradient(frames_.normal(i)).with_label("B" + std::to_string(i));
}

TensorField Calculus::dagger(const TensorField& f) const {
  if (f.rank() < 1) throw ShapeError("dagger of a rank-0 field");
  return bigcirc_field(on_tube(f), transpose_field(frames_.rotation())).with_label("dagger " + f.label());
}

TensorField Calculus::curl(const TensorField& f) const {
  if (f.rank() < 1) throw ShapeError("curl of a rank-0 field");
  return scaled_field(-1.0, divergence(dagger(f))).with_label("curl " + f.label());
}

TensorField Calculus::vector_curl(const TensorField& f) const {
  return bigcirc_field(surface_gradient(f), transpose_field(frames_.rotation()))
      .with_label("Curl " + f.label());
}

TensorField Calculus::time_derivative(const TensorField& f) const {
  return engine().time_derivative_field(on_tube(f));
}

TensorField Calculus::material_derivative(const TensorField& f, const TensorField& w) const {
  if (w.rank() != 1) throw ShapeError("material velocity must be a rank-1 field");
  return sum_field(time_derivative(f), insert_right_field(gradient(f), w))
      .with_label("D_w " + f.label());
}

TensorField Calculus::projector_rate(const TensorField& w) const {
  const int n = geometry().dim();
  TensorField acc = constant_field(Tensor::zeros(n, 2), n);
  for (int i = 0; i < geometry().codim(); ++i) {
    const TensorField& ni = frames_.normal(i);
    const TensorField dn = material_derivative(ni, w);
    acc = sum_field(acc, sum_field(outer_field(dn, ni), outer_field(ni, dn)));
  }
  return scaled_field(0.5, acc).with_label("C[w]");
}

}  // namespace xtc
