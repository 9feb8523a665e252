#include <cmath>
#include <numbers>

#include "context.hpp"

namespace xtc::suites {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamples = 20;

TensorField rotation_about_z(double omega = 1.0) {
  PolynomialTensor u{{3, 1}, std::vector<Polynomial>(3, Polynomial(3))};
  u.leaves[0].add_term(-omega, std::vector<int>{0, 1, 0, 0});
  u.leaves[1].add_term(omega, std::vector<int>{1, 0, 0, 0});
  return polynomial_field(u, "e_z x x");
}

TensorField coordinate(int dim, int j) {
  return polynomial_field({{dim, 0}, {Polynomial::variable(dim, j)}}, "x" + std::to_string(j));
}

}  // namespace

void stokes(Context& ctx) {
  const Metric rel = Metric::rel, abs = Metric::abs;

  if (ctx.selects("hemisphere")) {
    const GeometryInstance h = ctx.geometry("hemisphere");
    Calculus calc(h.geometry, ctx.engine());
    const double r = h.param("R");
    const TensorField ez = constant_field(Tensor::covector({0, 0, 1}), 3);
    const IdentityResidual res = stokes_residual(calc, h.atlas, ez);
    ctx.check("stokes.hemisphere.e_z_boundary", "int_dM P e_z . t = -2 pi R", 1e-6,
              [&](std::mt19937_64&) { return against(res.term("boundary").value(), -2.0 * kPi * r, rel); });
    ctx.check("stokes.hemisphere.e_z_curvature", "int e_z . kappa = 2 pi R", 1e-6,
              [&](std::mt19937_64&) { return against(res.term("curvature").value(), 2.0 * kPi * r, rel); });
    ctx.check("stokes.hemisphere.e_z_total", "int Div_M e_z = int_dM e_z . t + int e_z . kappa", 1e-6,
              [&](std::mt19937_64&) { return from_residual(res, abs); });

    ctx.check("stokes.hemisphere.gradient_corollary", "int grad_M f = int_dM f t + int f kappa for f = z", 1e-6,
              [&](std::mt19937_64&) {
                const TensorField f = coordinate(3, 2);
                const Tensor lhs = integrate(h.atlas, calc.surface_gradient(f));
                const Tensor boundary = integrate_boundary(
                    h.atlas, calc, [&](const BoundaryNode& b) { return f(b.x).value() * Tensor::covector(b.conormal); },
                    {3, 1});
                const Tensor curvature = integrate(h.atlas, outer_field(f, calc.mean_curvature()));
                return compare(lhs, boundary + curvature, abs);
              });

    ctx.check("stokes.hemisphere.boundary_length", "int_dM 1 = 2 pi R", 1e-10, [&](std::mt19937_64&) {
      const Tensor len = integrate_boundary(
          h.atlas, calc, [](const BoundaryNode&) { return Tensor::scalar(1.0, 3); }, {3, 0});
      return against(len.value(), 2.0 * kPi * r, rel);
    });

    ctx.check("stokes.hemisphere.conormal", "co-normal on the rim is -e_z, det(t, tau, n) = 1", 1e-10,
              [&](std::mt19937_64&) {
                Worst w(abs);
                for (const auto& b : h.atlas.boundary_nodes(calc)) {
                  w.add(Tensor::covector(b.conormal), Tensor::covector({0, 0, -1}));
                  const GeometryFrame f = calc.frame(b.x);
                  w.add(compare(determinant({b.conormal, b.tau, f.normals[0]}), 1.0, abs));
                }
                return w.result();
              });

    ctx.check("stokes.hemisphere.normal_rank2", "Stokes identity for a random rank-2 field", ctx.pick(1e-6, 1e-9),
              [&](std::mt19937_64& rng) { return from_residual(stokes_residual(calc, h.atlas, random_field(3, 2, rng)), rel); });

    ctx.check("stokes.hemisphere.integration_by_parts",
              "int S:Div_M T = -int T:grad_M S + int_dM (S:T).t + int (S:T).kappa", 1e-5, [&](std::mt19937_64& rng) {
                return from_residual(
                    integration_by_parts_residual(calc, h.atlas, random_field(3, 1, rng), random_field(3, 2, rng)), rel);
              });
  }

  if (ctx.selects("sphere")) {
    const GeometryInstance s = ctx.geometry("sphere");
    Calculus calc(s.geometry, ctx.engine());
    const double r = s.param("R");
    ctx.check("stokes.sphere.area", "int 1 = 4 pi R^2", 1e-10, [&](std::mt19937_64&) {
      return against(integrate(s.atlas, constant_field(Tensor::scalar(1.0, 3), 3)).value(), 4.0 * kPi * r * r, rel);
    });
    ctx.check("stokes.sphere.normal_integral", "int n = 0 on the closed sphere", 1e-10, [&](std::mt19937_64&) {
      return compare(integrate(s.atlas, calc.frames().normal(0)), Tensor(3, 1), abs);
    });
    ctx.check("stokes.sphere.rotation_terms", "Div_M, boundary and curvature terms vanish for e_z x x", 1e-8,
              [&](std::mt19937_64&) {
                const IdentityResidual res = stokes_residual(calc, s.atlas, rotation_about_z());
                return bound(std::max({norm(res.lhs), norm(res.term("boundary")), norm(res.term("curvature"))}));
              });
    ctx.check("stokes.sphere.constant_rank2", "int Div_M A = int A . kappa = 0 for constant A", ctx.pick(1e-7, 1e-10),
              [&](std::mt19937_64& rng) {
                return from_residual(stokes_residual(calc, s.atlas, constant_field(random_tensor(3, 2, rng), 3)), abs);
              });
    ctx.check("stokes.sphere.integration_by_parts_tangential",
              "integration by parts for tangential T and S = P(S) on the closed sphere", 1e-6,
              [&](std::mt19937_64& rng) {
                const TensorField sf = calc.projected(random_field(3, 1, rng));
                const TensorField tf = calc.projected(random_field(3, 2, rng));
                return from_residual(integration_by_parts_residual(calc, s.atlas, sf, tf), rel);
              });
  }

  if (ctx.selects("circle3d")) {
    const GeometryInstance c = ctx.geometry("circle3d");
    ctx.check("stokes.circle3d.length", "int 1 = 2 pi R on the codimension-2 circle", 1e-10, [&](std::mt19937_64&) {
      return against(integrate(c.atlas, constant_field(Tensor::scalar(1.0, 3), 3)).value(), 2.0 * kPi * c.param("R"),
                     rel);
    });
  }

  // Rank-1 Stokes on manifolds with boundary.
  std::vector<std::pair<std::string, GeometryParams>> open;
  if (ctx.config().geometry.empty()) {
    open = {{"hemisphere", {}},
            {"plane_disk", {}},
            {"torus_patch", {{"phi_max", kPi}, {"psi_max", kPi}}},
            {"helix_segment", {}}};
  } else {
    const GeometryInstance g = ctx.geometry(ctx.config().geometry);
    if (is_static(g)) open = {{ctx.config().geometry, {}}};
  }
  for (const auto& [label, params] : open) {
    const std::string name = label == "torus_patch" ? "torus" : label;
    const GeometryInstance g = ctx.geometry(name, params);
    Calculus calc(g.geometry, ctx.engine());
    ctx.check("stokes." + label + ".rank1", "int Div_M u = int_dM u . t + int u . kappa for random u",
              ctx.pick(1e-6, 1e-9),
              [&](std::mt19937_64& rng) { return from_residual(stokes_residual(calc, g.atlas, random_field(g.geometry->dim(), 1, rng)), rel); });
  }

  for (const auto& name : ctx.geometries({"helix_segment"}, [](const GeometryInstance& g) {
         return g.geometry->manifold_dim() == 1 && is_static(g);
       })) {
    const GeometryInstance g = ctx.geometry(name);
    Calculus calc(g.geometry, ctx.engine());
    for (int q = 0; q <= 2; ++q) {
      ctx.check("stokes." + name + ".path_ftc_rank" + std::to_string(q), "int_gamma grad_M T . w = T(b) - T(a)",
                ctx.pick(1e-6, 1e-9), [&](std::mt19937_64& rng) {
                  return from_residual(path_ftc_residual(calc, g.atlas, random_field(g.geometry->dim(), q, rng)), rel);
                });
    }
  }

  if (ctx.selects("plane_disk")) {
    const GeometryInstance d = ctx.geometry("plane_disk");
    Calculus calc(d.geometry, ctx.engine());
    const double r = d.param("R");
    ctx.check("stokes.plane_disk.circulation", "int Curl u = int_dM u . tau = 2 pi R^2 for u = (-y, x, 0)", 1e-8,
              [&](std::mt19937_64&) {
                const IdentityResidual res = circulation_residual(calc, d.atlas, rotation_about_z());
                Worst w(abs);
                w.add(res.lhs, Tensor::scalar(2.0 * kPi * r * r, 3));
                w.add(res.rhs, Tensor::scalar(2.0 * kPi * r * r, 3));
                return w.result();
              });
    ctx.check("stokes.plane_disk.conormal", "co-normal on the rim is x / R", 1e-10, [&](std::mt19937_64&) {
      Worst w(abs);
      for (const auto& b : d.atlas.boundary_nodes(calc))
        w.add(Tensor::covector(b.conormal), Tensor::covector(scaled(1.0 / r, b.x)));
      return w.result();
    });
  }
}

void curl(Context& ctx) {
  const Metric abs = Metric::abs;
  if (ctx.selects("plane_disk")) {
    const GeometryInstance d = ctx.geometry("plane_disk");
    Calculus calc(d.geometry, ctx.engine());
    ctx.check("curl.plane_disk.rotation", "curl of (-y, x, 0) on z = 0 equals 2", ctx.pick(1e-8, 1e-12),
              [&](std::mt19937_64& rng) {
                const TensorField c = calc.curl(rotation_about_z());
                Worst w(abs);
                for (const auto& x : sample_points(d, rng, kSamples)) w.add(compare(c(x).value(), 2.0, abs));
                return w.result();
              });
    ctx.check("curl.plane_disk.constant", "curl of a constant tangential field is 0", ctx.pick(1e-8, 1e-12),
              [&](std::mt19937_64& rng) {
                const TensorField c = calc.curl(constant_field(Tensor::covector({0.3, -1.2, 0.0}), 3));
                Worst w(abs);
                for (const auto& x : sample_points(d, rng, kSamples)) w.add(compare(c(x).value(), 0.0, abs));
                return w.result();
              });
  }

  for (const auto& name : ctx.geometries({"plane_disk", "sphere"}, [](const GeometryInstance& g) {
         return is_surface(g) && is_static(g);
       })) {
    const GeometryInstance g = ctx.geometry(name);
    Calculus calc(g.geometry, ctx.engine());
    const std::string base = "curl." + name;
    for (int q = 0; q <= 1; ++q) {
      const std::string rank = "_rank" + std::to_string(q);
      ctx.check(base + ".curl_of_gradient" + rank, "Curl grad_M T = 0", ctx.pick(1e-5, 1e-9),
                [&](std::mt19937_64& rng) {
                  const TensorField c = calc.curl(calc.surface_gradient(random_field(3, q, rng)));
                  Worst w(abs);
                  for (const auto& x : sample_points(g, rng, kSamples)) w.add(c(x), Tensor(3, q));
                  return w.result();
                });
      ctx.check(base + ".divergence_of_vector_curl" + rank, "Div_M Curl T = 0 (vector curl)", ctx.pick(1e-5, 1e-9),
                [&](std::mt19937_64& rng) {
                  const TensorField c = calc.divergence(calc.vector_curl(random_field(3, q, rng)));
                  Worst w(abs);
                  for (const auto& x : sample_points(g, rng, kSamples)) w.add(c(x), Tensor(3, q));
                  return w.result();
                });
    }
    ctx.check(base + ".circulation_rank1", "int Curl u = int_dM u . tau for random u", ctx.pick(1e-6, 1e-9),
              [&](std::mt19937_64& rng) {
                return from_residual(circulation_residual(calc, g.atlas, random_field(3, 1, rng)), Metric::rel);
              });
  }

  if (ctx.selects("hemisphere")) {
    const GeometryInstance h = ctx.geometry("hemisphere");
    Calculus calc(h.geometry, ctx.engine());
    ctx.check("curl.hemisphere.gradient_circulation", "int_dM grad_M f . tau = 0 = int Curl grad_M f",
              ctx.pick(1e-6, 1e-9), [&](std::mt19937_64& rng) {
                const IdentityResidual res = circulation_residual(calc, h.atlas, calc.surface_gradient(random_field(3, 0, rng)));
                return bound(std::max(norm(res.lhs), norm(res.rhs)));
              });
    ctx.check("curl.hemisphere.circulation_rank2", "int Curl T = int_dM T . tau for random rank-2 T",
              ctx.pick(1e-6, 1e-9), [&](std::mt19937_64& rng) {
                return from_residual(circulation_residual(calc, h.atlas, random_field(3, 2, rng)), Metric::rel);
              });
  }
}

void laplacian(Context& ctx) {
  const Metric rel = Metric::rel, abs = Metric::abs;
  if (ctx.selects("sphere")) {
    const GeometryInstance s = ctx.geometry("sphere");
    Calculus calc(s.geometry, ctx.engine());
    const double r = s.param("R");
    ctx.check("laplacian.sphere.coordinates", "Lap_M x_j = -(2 / R^2) x_j", ctx.pick(1e-4, 1e-9),
              [&](std::mt19937_64& rng) {
                const TensorField lap = calc.laplacian(position_field(3));
                Worst w(rel);
                for (const auto& x : sample_points(s, rng, kSamples))
                  w.add_against(lap(x), Tensor::covector(scaled(-2.0 / (r * r), x)));
                return w.result();
              });
    ctx.check("laplacian.sphere.constant", "Lap_M c = 0", 1e-10, [&](std::mt19937_64& rng) {
      const TensorField lap = calc.laplacian(constant_field(Tensor::scalar(2.5, 3), 3));
      Worst w(abs);
      for (const auto& x : sample_points(s, rng, kSamples)) w.add(compare(lap(x).value(), 0.0, abs));
      return w.result();
    });
    ctx.check("laplacian.sphere.scalar_covariant", "Lap_cov f = Lap_M f for scalar f", ctx.pick(1e-6, 1e-9),
              [&](std::mt19937_64& rng) {
                const TensorField f = random_field(3, 0, rng);
                const TensorField a = calc.covariant_laplacian(f), b = calc.laplacian(f);
                Worst w(abs);
                for (const auto& x : sample_points(s, rng, kSamples)) w.add(a(x), b(x));
                return w.result();
              });
    ctx.check("laplacian.sphere.covariant_rotation", "Lap_cov u = -u / R^2 for u = e_z x x", ctx.pick(1e-3, 1e-9),
              [&](std::mt19937_64& rng) {
                const TensorField u = rotation_about_z();
                const TensorField lap = calc.covariant_laplacian(u);
                Worst w(rel);
                for (const auto& x : sample_points(s, rng, kSamples)) w.add_against(lap(x), (-1.0 / (r * r)) * u(x));
                return w.result();
              });
    ctx.check("laplacian.sphere.covariant_tangent", "Lap_cov P(T) is tangent", ctx.pick(1e-8, 1e-10),
              [&](std::mt19937_64& rng) {
                const TensorField lap = calc.covariant_laplacian(calc.projected(random_field(3, 1, rng)));
                Worst w(abs);
                for (const auto& x : sample_points(s, rng, 5)) {
                  const Tensor v = lap(x);
                  w.add(project(calc.frame(x), v), v);
                }
                return w.result();
              });

    const TensorField u = calc.projected(rotation_about_z());
    ctx.check("laplacian.sphere.rotation_weak_eigen", "a_cov(u, S) = int u . S / R^2 for u = e_z x x",
              ctx.pick(1e-6, 1e-9), [&](std::mt19937_64& rng) {
                Worst w(abs);
                for (int k = 0; k < 5; ++k) {
                  const TensorField sk = calc.projected(random_field(3, 1, rng));
                  w.add(from_residual(weak_form_residual(calc, s.atlas, u, sk, scaled_field(1.0 / (r * r), u)), abs));
                }
                return w.result();
              });
    ctx.check("laplacian.sphere.weak_form", "a_cov(T, S) = l(S) with f = -Lap_cov T pointwise", 1e-4,
              [&](std::mt19937_64& rng) {
                const TensorField forcing = scaled_field(-1.0, calc.covariant_laplacian(u));
                const Atlas atlas = s.atlas;
                Worst w(abs);
                for (int k = 0; k < 5; ++k) {
                  const TensorField sk = calc.projected(random_field(3, 1, rng));
                  w.add(from_residual(weak_form_residual(calc, atlas, u, sk, forcing), abs));
                }
                return w.result();
              });
    ctx.check("laplacian.sphere.weak_symmetry", "a_cov(T, S) = a_cov(S, T)", 1e-10, [&](std::mt19937_64& rng) {
      const TensorField t = calc.projected(random_field(3, 1, rng));
      const TensorField sf = calc.projected(random_field(3, 1, rng));
      auto a = [&](const TensorField& x, const TensorField& y) {
        return integrate(s.atlas, frobenius_field(calc.covariant_gradient(x), calc.covariant_gradient(y))).value();
      };
      return compare(a(t, sf), a(sf, t), abs);
    });
    ctx.check("laplacian.sphere.weak_positivity", "a_cov(T, T) < 0 occurrences", 0.0, [&](std::mt19937_64& rng) {
      int negative = 0;
      for (int k = 0; k < 3; ++k) {
        const TensorField t = calc.projected(random_field(3, 1, rng));
        const TensorField g = calc.covariant_gradient(t);
        if (integrate(s.atlas, frobenius_field(g, g)).value() < 0.0) ++negative;
      }
      return bound(negative);
    });
  }

  if (ctx.selects("plane_disk")) {
    const GeometryInstance d = ctx.geometry("plane_disk");
    Calculus calc(d.geometry, ctx.engine());
    ctx.check("laplacian.plane_disk.paraboloid", "Lap_M (x^2 + y^2) = 4 on z = 0", ctx.pick(1e-4, 1e-9),
              [&](std::mt19937_64& rng) {
                Polynomial p(3);
                p.add_term(1.0, std::vector<int>{2, 0, 0, 0});
                p.add_term(1.0, std::vector<int>{0, 2, 0, 0});
                const TensorField lap = calc.laplacian(polynomial_field({{3, 0}, {p}}));
                Worst w(Metric::rel);
                for (const auto& x : sample_points(d, rng, kSamples)) w.add(against(lap(x).value(), 4.0, Metric::rel));
                return w.result();
              });
  }
}

}  // namespace xtc::suites
