#include <cmath>
#include <optional>

#include "context.hpp"
#include "xtc/errors.hpp"

namespace xtc::suites {
namespace {

constexpr int kSamples = 20;

// Closed-form mean curvature vector, where one is known.
std::optional<Vector> exact_mean_curvature(const GeometryInstance& g, const Point& x, double t) {
  const std::string& name = g.name;
  const double r2 = dot(x, x);
  if (name == "circle2d") return scaled(1.0 / r2, x);
  if (name == "sphere" || name == "hemisphere" || name == "expanding_sphere") return scaled(2.0 / r2, x);
  if (name == "circle3d") {
    const double rho2 = x[0] * x[0] + x[1] * x[1];
    return Vector{x[0] / rho2, x[1] / rho2, 0.0};
  }
  if (name == "helix_segment") {
    const double a = g.param("a"), b = g.param("b");
    const double s = a * a + b * b;
    return Vector{x[0] / s, x[1] / s, 0.0};
  }
  if (name == "torus") {
    const double big = g.param("R"), small = g.param("r");
    const double rho = std::hypot(x[0], x[1]);
    const double cos_psi = (rho - big) / small;
    const double k = 1.0 / small + cos_psi / rho;
    return Vector{k * cos_psi * x[0] / rho, k * cos_psi * x[1] / rho, k * x[2] / small};
  }
  if (name == "plane_disk" || name == "translating_plane" || name == "rotating_plane") return Vector(3, 0.0);
  (void)t;
  return std::nullopt;
}

TensorField coordinate(int dim, int j) {
  return polynomial_field({{dim, 0}, {Polynomial::variable(dim, j)}}, "x" + std::to_string(j));
}

// Rebuilds P(T) leaf by leaf from T(P e_i1, .., P e_iq).
Tensor brute_projection(const GeometryFrame& frame, const Tensor& t) {
  const int n = t.dim();
  Tensor r(n, t.rank());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::vector<Vector> args(t.rank());
    std::size_t rest = flat;
    for (int k = t.rank() - 1; k >= 0; --k) {
      args[k] = insert_right(frame.P, unit_vector(n, static_cast<int>(rest % n))).data();
      rest /= n;
    }
    r[flat] = t.evaluate(args);
  }
  return r;
}

}  // namespace

void projection(Context& ctx) {
  const auto all = ctx.geometries({"sphere", "circle3d", "torus", "helix_segment"});
  for (const auto& name : all) {
    const GeometryInstance g = ctx.geometry(name);
    const int n = g.geometry->dim();
    const std::string base = "projection." + name;
    auto frames = [&](std::mt19937_64& rng, int count) {
      std::vector<GeometryFrame> out;
      for (const auto& x : sample_points(g, rng, count)) out.push_back(compute_frame(*g.geometry, ctx.engine(), x));
      return out;
    };

    ctx.check(base + ".brute_force", "recursive P(T) = T(P v_1, .., P v_q) on basis tuples", 1e-12,
              [&](std::mt19937_64& rng) {
                Worst w(Metric::abs);
                for (const auto& f : frames(rng, 50))
                  for (int q = 0; q <= 3; ++q) {
                    const Tensor t = random_tensor(n, q, rng);
                    w.add(project(f, t), brute_projection(f, t));
                  }
                return w.result();
              });

    ctx.check(base + ".projector_identities", "P o P = P, N o N = N, P o N = 0, P + N = I, P n_i = 0", 1e-10,
              [&](std::mt19937_64& rng) {
                Worst w(Metric::abs);
                const Tensor id = Tensor::identity(n);
                for (const auto& f : frames(rng, 100)) {
                  w.add(bigcirc(f.P, f.P), f.P);
                  w.add(bigcirc(f.N, f.N), f.N);
                  w.add(bigcirc(f.P, f.N), Tensor(n, 2));
                  w.add(f.P + f.N, id);
                  for (std::size_t i = 0; i < f.normals.size(); ++i) {
                    w.add(insert_right(f.P, f.normals[i]), Tensor(n, 1));
                    for (std::size_t j = 0; j < f.normals.size(); ++j)
                      w.add(compare(dot(f.normals[i], f.normals[j]), i == j ? 1.0 : 0.0, Metric::abs));
                  }
                }
                return w.result();
              });

    ctx.check(base + ".idempotence", "P(P(T)) = P(T) and S . T = S . P(T) for tangent S", 1e-11,
              [&](std::mt19937_64& rng) {
                Worst w(Metric::abs);
                for (const auto& f : frames(rng, 50))
                  for (int q = 1; q <= 3; ++q) {
                    const Tensor t = random_tensor(n, q, rng);
                    const Tensor pt = project(f, t);
                    w.add(project(f, pt), pt);
                    const Tensor s = project(f, random_tensor(n, q, rng));
                    w.add(compare(frobenius(s, t), frobenius(s, pt), Metric::abs));
                    if (!is_tangent(f, pt)) w.add(bound(1.0));
                  }
                return w.result();
              });

    if (g.geometry->manifold_dim() == 2) {
      ctx.check(base + ".dagger", "(u+)+ = -P u, u . u+ = 0, u+ . v+ = P u . P v, n+ = 0", 1e-12,
                [&](std::mt19937_64& rng) {
                  Worst w(Metric::abs);
                  for (const auto& f : frames(rng, 100)) {
                    const Vector u = random_vector(n, rng), v = random_vector(n, rng);
                    const Vector pu = insert_right(f.P, u).data(), pv = insert_right(f.P, v).data();
                    const Vector ud = dagger(f, u), vd = dagger(f, v);
                    w.add(Tensor::covector(dagger(f, ud)), Tensor::covector(scaled(-1.0, pu)));
                    w.add(compare(dot(pu, ud), 0.0, Metric::abs));
                    w.add(compare(dot(ud, vd), dot(pu, pv), Metric::abs));
                    for (const auto& ni : f.normals) w.add(Tensor::covector(dagger(f, ni)), Tensor(n, 1));
                  }
                  return w.result();
                });

      ctx.check(base + ".orientation", "frames with det(t1, t2, n_1..n_m) <= 0 (count)", 0.0,
                [&](std::mt19937_64& rng) {
                  int bad = 0;
                  for (const auto& f : frames(rng, 1000)) {
                    const auto b = tangent_basis_2d(f);
                    std::vector<Vector> cols{b.t1, b.t2};
                    cols.insert(cols.end(), f.normals.begin(), f.normals.end());
                    if (!(determinant(cols) > 0.0)) ++bad;
                  }
                  return bound(bad);
                });
    }
  }

  if (ctx.selects("circle3d")) {
    ctx.check("projection.circle3d.frame_example", "codim-2 circle at (R,0,0): normals e_z, e_x and P = e_y e_y",
              1e-10, [&](std::mt19937_64&) {
                const GeometryInstance g = ctx.geometry("circle3d");
                const double r = g.param("R");
                const GeometryFrame f = compute_frame(*g.geometry, ctx.engine(), Point{r, 0.0, 0.0});
                Tensor expect(3, 2);
                expect.at({1, 1}) = 1.0;
                Worst w(Metric::abs);
                w.add(f.P, expect);
                w.add(Tensor::covector(f.normals[0]), Tensor::covector({0, 0, 1}));
                w.add(Tensor::covector(f.normals[1]), Tensor::covector({1, 0, 0}));
                return w.result();
              });
  }
  if (ctx.selects("sphere")) {
    ctx.check("projection.sphere.pole", "sphere at the north pole: P = diag(1, 1, 0)", 1e-10,
              [&](std::mt19937_64&) {
                const GeometryInstance g = ctx.geometry("sphere");
                const GeometryFrame f = compute_frame(*g.geometry, ctx.engine(), Point{0, 0, g.param("R")});
                Tensor expect = Tensor::identity(3);
                expect.at({2, 2}) = 0.0;
                return compare(f.P, expect, Metric::abs);
              });
  }
  if (ctx.selects("circle2d")) {
    ctx.check("projection.circle2d.frame_example", "circle at (R,0): n = e_x and P = e_y e_y", 1e-10,
              [&](std::mt19937_64&) {
                const GeometryInstance g = ctx.geometry("circle2d");
                const GeometryFrame f = compute_frame(*g.geometry, ctx.engine(), Point{g.param("R"), 0});
                Worst w(Metric::abs);
                w.add(f.P, Tensor(2, 2, {0, 0, 0, 1}));
                w.add(Tensor::covector(f.normals[0]), Tensor::covector({1, 0}));
                return w.result();
              });
  }
  if (ctx.selects("plane_disk")) {
    ctx.check("projection.plane_disk.dagger_example", "plane z = 0: basis (e_x, e_y) and e_x+ = e_y", 1e-12,
              [&](std::mt19937_64&) {
                const GeometryInstance g = ctx.geometry("plane_disk");
                const GeometryFrame f = compute_frame(*g.geometry, ctx.engine(), Point{0.3, -0.2, 0.0});
                const auto b = tangent_basis_2d(f);
                Worst w(Metric::abs);
                w.add(Tensor::covector(b.t1), Tensor::covector({1, 0, 0}));
                w.add(Tensor::covector(b.t2), Tensor::covector({0, 1, 0}));
                w.add(Tensor::covector(dagger(f, Vector{1, 0, 0})), Tensor::covector({0, 1, 0}));
                return w.result();
              });
  }
}

void differential_identities(Context& ctx) {
  const double fd_tol = 1e-5, exact_tol = 1e-9;

  // Mean curvature against closed forms.
  std::vector<std::pair<std::string, GeometryParams>> curved;
  if (ctx.config().geometry.empty()) {
    curved = {{"sphere", {}}, {"sphere_R2", {{"R", 2.0}}}, {"circle2d", {}}, {"circle3d", {}},
              {"torus", {}},  {"helix_segment", {}}};
  } else {
    curved = {{ctx.config().geometry, {}}};
  }
  for (const auto& [label, params] : curved) {
    const std::string name = label == "sphere_R2" ? "sphere" : label;
    const GeometryInstance g = ctx.geometry(name, params);
    if (!is_static(g)) continue;
    Calculus calc(g.geometry, ctx.engine());
    const TensorField kappa = calc.mean_curvature();
    ctx.check("differential." + label + ".mean_curvature", "kappa_j = div_M N_j against the closed form",
              ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                Worst w(Metric::rel);
                for (const auto& x : sample_points(g, rng, kSamples)) {
                  const auto exact = exact_mean_curvature(g, x, 0.0);
                  if (!exact) throw NumericalError("no closed-form curvature for " + g.name);
                  w.add_against(kappa(x), Tensor::covector(*exact));
                }
                return w.result();
              });
    ctx.check("differential." + label + ".curvature_normal", "P kappa = 0", ctx.pick(1e-6, 1e-10),
              [&](std::mt19937_64& rng) {
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples)) {
                  const GeometryFrame f = calc.frame(x);
                  w.add(insert_right(f.P, kappa(x).leaves()), Tensor(g.geometry->dim(), 1));
                }
                return w.result();
              });
  }

  for (const auto& name : ctx.geometries({"sphere", "plane_disk", "circle3d"}, is_static)) {
    const GeometryInstance g = ctx.geometry(name);
    Calculus calc(g.geometry, ctx.engine());
    const int n = g.geometry->dim();
    const int m = g.geometry->codim();
    const std::string base = "differential." + name;
    const bool surface = is_surface(g);

    ctx.check(base + ".coordinate_gradient", "grad_M x_j = P_j", ctx.pick(1e-8, 1e-12), [&](std::mt19937_64& rng) {
      Worst w(Metric::abs);
      for (const auto& x : sample_points(g, rng, kSamples)) {
        const GeometryFrame f = calc.frame(x);
        for (int j = 0; j < n; ++j) w.add(calc.surface_gradient(coordinate(n, j))(x), f.P.row(j));
      }
      return w.result();
    });

    ctx.check(base + ".position_divergence", "div_M x = n - m", ctx.pick(1e-8, 1e-12), [&](std::mt19937_64& rng) {
      Worst w(Metric::abs);
      const TensorField div = calc.divergence(position_field(n));
      for (const auto& x : sample_points(g, rng, kSamples)) w.add(compare(div(x).value(), n - m, Metric::abs));
      return w.result();
    });

    ctx.check(base + ".gradient_tangential", "grad_M F . n_i = 0", ctx.pick(1e-8, 1e-12), [&](std::mt19937_64& rng) {
      Worst w(Metric::abs);
      const TensorField grad = calc.surface_gradient(random_field(n, 1, rng));
      for (const auto& x : sample_points(g, rng, kSamples)) {
        const GeometryFrame f = calc.frame(x);
        for (const auto& ni : f.normals) w.add(insert_right(grad(x), ni), Tensor(n, 1));
      }
      return w.result();
    });

    ctx.check(base + ".shape_decomposition", "grad_M u = grad_cov u - sum_i n_i (x) B_i(u) for tangential u",
              ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                const TensorField u = calc.projected(random_field(n, 1, rng));
                const TensorField gm = calc.surface_gradient(u);
                const TensorField gc = calc.covariant_gradient(u);
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples)) {
                  const Tensor ux = u(x);
                  Tensor rhs = gc(x);
                  for (int i = 0; i < m; ++i) {
                    const Tensor bu = insert_left(calc.shape_operator(i)(x), ux.leaves());
                    rhs -= outer(calc.frames().normal(i)(x), bu);
                  }
                  w.add(gm(x), rhs);
                }
                return w.result();
              });

    ctx.check(base + ".covariant_leibniz",
              "grad_cov(u . v) . w = (grad_cov u . w) . v + (grad_cov v . w) . u for tangential u, v, w",
              ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                const TensorField u = calc.projected(random_field(n, 1, rng));
                const TensorField v = calc.projected(random_field(n, 1, rng));
                const TensorField uv = frobenius_field(u, v);
                const TensorField gu = calc.covariant_gradient(u), gv = calc.covariant_gradient(v);
                const TensorField guv = calc.covariant_gradient(uv);
                Worst w(Metric::rel);
                for (const auto& x : sample_points(g, rng, kSamples)) {
                  const GeometryFrame f = calc.frame(x);
                  const Vector dir = insert_right(f.P, random_vector(n, rng)).data();
                  const double lhs = insert_right(guv(x), dir).value();
                  const double rhs = dot(insert_right(gu(x), dir).leaves(), v(x).leaves()) +
                                     dot(insert_right(gv(x), dir).leaves(), u(x).leaves());
                  w.add(compare(lhs, rhs, Metric::rel));
                }
                return w.result();
              });

    ctx.check(base + ".product_frobenius", "grad_M(T . S) = S:grad_M T + T:grad_M S", ctx.pick(fd_tol, exact_tol),
              [&](std::mt19937_64& rng) {
                const TensorField t = random_field(n, 2, rng), s = random_field(n, 2, rng);
                const TensorField lhs = calc.surface_gradient(frobenius_field(t, s));
                const TensorField gt = calc.surface_gradient(t), gs = calc.surface_gradient(s);
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples))
                  w.add(lhs(x), contract_left(s(x), gt(x)) + contract_left(t(x), gs(x)));
                return w.result();
              });

    ctx.check(base + ".product_outer", "grad_M(S (x) T) = grad_M S (x) T + S (x) grad_M T",
              ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                const TensorField s = random_field(n, 1, rng), t = random_field(n, 1, rng);
                const TensorField lhs = calc.surface_gradient(outer_field(s, t));
                const TensorField gs = calc.surface_gradient(s), gt = calc.surface_gradient(t);
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples))
                  w.add(lhs(x), move_slot_to_last(outer(gs(x), t(x)), 1) + outer(s(x), gt(x)));
                return w.result();
              });

    for (int q : {2, 3}) {
      ctx.check(base + ".product_divergence_rank" + std::to_string(q),
                "Div_M(S:T) = S:Div_M T + T:grad_M S", ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                  const TensorField s = random_field(n, 1, rng), t = random_field(n, q, rng);
                  const TensorField lhs = calc.divergence(contract_left_field(s, t));
                  const TensorField dt = calc.divergence(t), gs = calc.surface_gradient(s);
                  Worst w(Metric::abs);
                  for (const auto& x : sample_points(g, rng, kSamples))
                    w.add(lhs(x), contract_left(s(x), dt(x)) + contract_gradient_pair(t(x), gs(x)));
                  return w.result();
                });
    }

    ctx.check(base + ".projection_in_bigcirc", "(grad_M T o A) . grad_M S = (grad_M T o P(A)) . grad_M S",
              ctx.pick(fd_tol, exact_tol), [&](std::mt19937_64& rng) {
                const TensorField t = random_field(n, 1, rng), s = random_field(n, 1, rng);
                const TensorField gt = calc.surface_gradient(t), gs = calc.surface_gradient(s);
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples)) {
                  const GeometryFrame f = calc.frame(x);
                  const Tensor a = random_tensor(n, 2, rng);
                  w.add(compare(frobenius(bigcirc(gt(x), a), gs(x)), frobenius(bigcirc(gt(x), project(f, a)), gs(x)),
                                Metric::abs));
                }
                return w.result();
              });

    if (surface) {
      ctx.check(base + ".product_curl", "Curl(S:T) = S:Curl T + T:Curl S (vector curl)", ctx.pick(fd_tol, exact_tol),
                [&](std::mt19937_64& rng) {
                  const TensorField s = random_field(n, 1, rng), t = random_field(n, 2, rng);
                  const TensorField lhs = calc.curl(contract_left_field(s, t));
                  const TensorField ct = calc.curl(t), vs = calc.vector_curl(s);
                  Worst w(Metric::abs);
                  for (const auto& x : sample_points(g, rng, kSamples))
                    w.add(lhs(x), contract_left(s(x), ct(x)) + Tensor::scalar(frobenius(t(x), vs(x)), n));
                  return w.result();
                });
    }

    if (name == "sphere" || name == "plane_disk") {
      ctx.check(base + ".shape_operator", name == "sphere" ? "P(B) = P / R" : "B = 0", ctx.pick(fd_tol, exact_tol),
                [&](std::mt19937_64& rng) {
                  const TensorField b = calc.shape_operator(0);
                  const double inv = name == "sphere" ? 1.0 / g.param("R") : 0.0;
                  Worst w(Metric::abs);
                  for (const auto& x : sample_points(g, rng, kSamples)) {
                    const GeometryFrame f = calc.frame(x);
                    w.add(project(f, b(x)), inv * f.P);
                  }
                  return w.result();
                });
    }
  }

  if (ctx.selects("expanding_sphere")) {
    ctx.check("differential.expanding_sphere.material_radius", "D_w |x| = c along radial material paths",
              ctx.pick(1e-6, 1e-12), [&](std::mt19937_64& rng) {
                const GeometryInstance g = ctx.geometry("expanding_sphere");
                Calculus calc(g.geometry, ctx.engine());
                const TensorField radius = scalar_field_with_hessian(
                    3, [](std::span<const double> x, double) { return norm(x); },
                    [](std::span<const double> x, double) { return scaled(1.0 / norm(x), x); },
                    [](std::span<const double> x, double) {
                      const double r = norm(x);
                      Tensor h = (1.0 / r) * Tensor::identity(3);
                      return h - (1.0 / (r * r * r)) * outer(Tensor::covector(x), Tensor::covector(x));
                    },
                    "|x|");
                const TensorField d = calc.material_derivative(radius, *g.velocity);
                Worst w(Metric::abs);
                for (const auto& x : sample_points(g, rng, kSamples))
                  w.add(compare(d(x).value(), g.param("c"), Metric::abs));
                return w.result();
              });
  }
}

}  // namespace xtc::suites
