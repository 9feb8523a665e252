#include <algorithm>
#include <cmath>
#include <numbers>

#include "context.hpp"

namespace xtc::suites {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamples = 20;
constexpr int kFrames = 1000;

TensorField rotation_about_z(double omega) {
  PolynomialTensor u{{3, 1}, std::vector<Polynomial>(3, Polynomial(3))};
  u.leaves[0].add_term(-omega, std::vector<int>{0, 1});
  u.leaves[1].add_term(omega, std::vector<int>{1});
  return polynomial_field(u, "omega e_z x x");
}

// p = omega^2 (x^2 + y^2) / 2 + shift
TensorField centrifugal_pressure(double omega, double shift = 0.0) {
  Polynomial p(3);
  p.add_term(0.5 * omega * omega, std::vector<int>{2});
  p.add_term(0.5 * omega * omega, std::vector<int>{0, 2});
  if (shift != 0.0) p.add_term(shift, std::vector<int>{0});
  return polynomial_field({{3, 0}, {p}}, "centrifugal pressure");
}

TensorField coordinate(int j) { return polynomial_field({{3, 0}, {Polynomial::variable(3, j)}}); }

TensorField unit_density() { return constant_field(Tensor::scalar(1.0, 3), 3); }

}  // namespace

void euler(Context& ctx) {
  const Metric abs = Metric::abs, rel = Metric::rel;
  const double omega = 1.5;
  const TensorField u = rotation_about_z(omega);

  if (ctx.selects("sphere")) {
    const GeometryInstance s = ctx.geometry("sphere");
    Calculus calc(s.geometry, ctx.engine());
    const FlowState state{u, centrifugal_pressure(omega), unit_density()};
    const EulerResidual res = euler_residual(calc, s.atlas, state);
    const double tol = 1e-5;
    ctx.check("euler.sphere.momentum", "d_t u + grad_cov u . u + grad_M p = 0 for rigid rotation", tol,
              [&](std::mt19937_64&) { return bound(res.momentum); });
    ctx.check("euler.sphere.divergence", "div_M u = 0 for rigid rotation", tol,
              [&](std::mt19937_64&) { return bound(res.divergence); });
    ctx.check("euler.sphere.divergence_form", "d_t u + P Div_M(u (x) u + p P) = 0", tol,
              [&](std::mt19937_64&) { return bound(res.divergence_form); });
    ctx.check("euler.sphere.form_identity", "P Div_M(u (x) u) = grad_cov u . u for divergence-free u", tol,
              [&](std::mt19937_64&) { return bound(res.form_identity); });

    ctx.check("euler.sphere.momentum_conservation", "int P Div_M(u (x) u + p P) = 0", 1e-6, [&](std::mt19937_64&) {
      const TensorField flux = sum_field(outer_field(u, u), outer_field(state.pressure, calc.frames().projector()));
      return compare(integrate(s.atlas, calc.projected(calc.divergence(flux))), Tensor(3, 1), abs);
    });

    ctx.check("euler.sphere.extrinsic_momentum", "J = int rho u = 0 for rigid rotation on the closed sphere", 1e-8,
              [&](std::mt19937_64&) { return bound(norm(extrinsic_momentum(s.atlas, state))); });

    const double r = s.param("R");
    const double scale = omega * omega * 4.0 * kPi * r * r * r;
    auto balance = [&](const FlowState& st) {
      const IdentityResidual fb = force_balance_residual(calc, s.atlas, st);
      Outcome o = from_residual(fb, rel);
      o.rel = fb.abs / scale;
      return o;
    };
    ctx.check("euler.sphere.force_balance", "int p kappa + sum_i int (B_i(u) . u) n_i = 0, relative to 4 pi omega^2",
              1e-6, [&](std::mt19937_64&) { return balance(state); });
    ctx.check("euler.sphere.force_balance_pressure_shift",
              "shifting p by a constant leaves int p kappa unchanged, relative to 4 pi omega^2", 1e-6,
              [&](std::mt19937_64&) {
                const FlowState shifted{u, centrifugal_pressure(omega, 3.0), unit_density()};
                const Tensor a = force_balance_residual(calc, s.atlas, state).lhs;
                const Tensor b = force_balance_residual(calc, s.atlas, shifted).lhs;
                Outcome o = compare(a, b, rel);
                o.rel = o.abs / scale;
                return o;
              });
    ctx.check("euler.sphere.missing_pressure", "momentum residual with p = 0 equals omega^2 |P(x, y, 0)|",
              ctx.pick(1e-6, 1e-9), [&](std::mt19937_64& rng) {
                const TensorField m = sum_field(calc.time_derivative(u),
                                                contract_right_field(calc.covariant_gradient(u), u));
                Worst w(rel);
                for (const auto& x : sample_points(s, rng, kSamples)) {
                  const Tensor radial = Tensor::covector({omega * omega * x[0], omega * omega * x[1], 0.0});
                  w.add(against(norm(m(x)), norm(project(calc.frame(x), radial)), rel));
                }
                return w.result();
              });

    ctx.check("euler.sphere.killing_tangent_velocity", "int P u = -int div_M(P u) r for a Killing field, both 0",
              1e-8, [&](std::mt19937_64&) {
                const IdentityResidual r = tangent_velocity_residual(calc, s.atlas, u);
                return bound(std::max(norm(r.lhs), norm(r.rhs)));
              });
    ctx.check("euler.sphere.gradient_momentum", "J = int grad_M z = (8 pi R^2 / 3) e_z matches the lemma", 1e-6,
              [&](std::mt19937_64&) {
                const TensorField g = calc.surface_gradient(coordinate(2));
                const Tensor j = extrinsic_momentum(s.atlas, FlowState{g, coordinate(0), unit_density()});
                const IdentityResidual lemma = tangent_velocity_residual(calc, s.atlas, g);
                Worst w(rel);
                w.add(against(j, Tensor::covector({0, 0, 8.0 * kPi * r * r / 3.0}), rel));
                w.add(against(lemma.rhs, j, rel));
                return w.result();
              });
  }

  if (ctx.selects("hemisphere")) {
    const GeometryInstance h = ctx.geometry("hemisphere");
    Calculus calc(h.geometry, ctx.engine());
    ctx.check("euler.hemisphere.tangent_velocity", "int P u = -int div_M(P u) r + int_dM (u . t) r for u = e_z", 1e-6,
              [&](std::mt19937_64&) {
                return from_residual(
                    tangent_velocity_residual(calc, h.atlas, constant_field(Tensor::covector({0, 0, 1}), 3)), rel);
              });
    const FlowState state{u, centrifugal_pressure(omega), unit_density()};
    ctx.check("euler.hemisphere.boundary_slip", "u . t = 0 on the rim for rigid rotation", 1e-10,
              [&](std::mt19937_64&) { return bound(euler_residual(calc, h.atlas, state).boundary_slip); });
    ctx.check("euler.hemisphere.force_balance",
              "int p kappa + int_dM p t = -sum_i int (B_i(u) . u) n_i = -(pi omega^2 R^3 / 2) e_z", 1e-6,
              [&](std::mt19937_64&) {
                const IdentityResidual fb = force_balance_residual(calc, h.atlas, state);
                const double r = h.param("R");
                Worst w(rel);
                w.add(against(fb.lhs, fb.rhs, rel));
                w.add(against(fb.rhs, Tensor::covector({0, 0, -0.5 * kPi * omega * omega * r * r * r}), rel));
                return w.result();
              });
  }
}

void stress(Context& ctx) {
  const Metric abs = Metric::abs, rel = Metric::rel;

  if (ctx.selects("hemisphere")) {
    const GeometryInstance h = ctx.geometry("hemisphere");
    Calculus calc(h.geometry, ctx.engine());
    for (const GeneratorIndex k : rotation_generators(3)) {
      const std::string label = k.label();
      ctx.check("stress.hemisphere.generator_identity_" + label,
                "int_dM (l_K:A).t + int (l_K:A).kappa = int l_K:Div_M A - int A . omega_K", 1e-5,
                [&](std::mt19937_64& rng) {
                  return from_residual(generator_identity_residual(calc, h.atlas, random_field(3, 2, rng), k), abs);
                });
      ctx.check("stress.hemisphere.torque_equivalence_" + label,
                "m_K = int l_K . Div_M sigma-bar - int omega_K . sigma-bar", 1e-5, [&](std::mt19937_64& rng) {
                  return from_residual(torque_equivalence_residual(calc, h.atlas, random_field(3, 2, rng), k), abs);
                });
      ctx.check("stress.hemisphere.pressure_torque_" + label, "torque formulas agree for sigma = p P", 1e-6,
                [&](std::mt19937_64&) {
                  const TensorField sigma = scaled_field(2.0, calc.frames().projector());
                  return from_residual(torque_equivalence_residual(calc, h.atlas, sigma, k), abs);
                });
    }
    ctx.check("stress.hemisphere.normal_force", "F_z = int 2 z = 2 pi R for sigma = n (x) n", 1e-6,
              [&](std::mt19937_64&) {
                const TensorField n = calc.frames().normal(0);
                const Tensor f = stress_force(calc, h.atlas, outer_field(n, n));
                const double r = h.param("R");
                return against(f, Tensor::covector({0, 0, 2.0 * kPi * r}), rel);
              });

    const Vector w{0.3, -0.7, 0.5};
    const TensorField pw = contract_right_field(calc.frames().projector(), constant_field(Tensor::covector(w), 3));
    const TensorField shear = outer_field(pw, calc.frames().normal(0));
    ctx.check("stress.hemisphere.contrapositive_normal", "normal_at_tangential = |P w| for sigma = P w (x) n", 1e-8,
              [&](std::mt19937_64& rng) {
                Worst out(abs);
                for (const auto& x : sample_points(h, rng, kSamples)) {
                  const EquilibriumDiagnostics d = equilibrium_diagnostics(calc, shear, x);
                  out.add(compare(d.normal_at_tangential, norm(pw(x)), abs));
                }
                return out.result();
              });
    ctx.check("stress.hemisphere.contrapositive_nonzero",
              "omega_K . sigma-bar and normal_at_tangential both nonzero for sigma = P w (x) n", 1e-3,
              [&](std::mt19937_64& rng) {
                double smallest = INFINITY;
                for (const auto& x : sample_points(h, rng, kSamples)) {
                  const EquilibriumDiagnostics d = equilibrium_diagnostics(calc, shear, x);
                  double g = 0.0;
                  for (double v : d.generator_terms) g = std::max(g, std::abs(v));
                  smallest = std::min({smallest, g, d.normal_at_tangential});
                }
                return at_least(smallest);
              });
    ctx.check("stress.hemisphere.normal_left", "omega_K . sigma-bar = 0 and normal_at_tangential = 0 for sigma = n (x) u",
              ctx.pick(1e-8, 1e-10), [&](std::mt19937_64& rng) {
                const TensorField sigma = outer_field(calc.frames().normal(0), random_field(3, 1, rng));
                double worst = 0.0;
                for (const auto& x : sample_points(h, rng, kSamples)) {
                  const EquilibriumDiagnostics d = equilibrium_diagnostics(calc, sigma, x);
                  for (double v : d.generator_terms) worst = std::max(worst, std::abs(v));
                  worst = std::max(worst, d.normal_at_tangential);
                }
                return bound(worst);
              });
    ctx.check("stress.hemisphere.pressure_divergence", "Div_M (p P)-bar = grad_M p - p kappa", ctx.pick(1e-5, 1e-9),
              [&](std::mt19937_64& rng) {
                const TensorField p = random_field(3, 0, rng);
                const TensorField sigma = outer_field(p, calc.frames().projector());
                const TensorField expect =
                    difference_field(calc.surface_gradient(p), outer_field(p, calc.mean_curvature()));
                Worst out(abs);
                for (const auto& x : sample_points(h, rng, kSamples))
                  out.add(Tensor::covector(equilibrium_diagnostics(calc, sigma, x).divergence), expect(x));
                return out.result();
              });
  }

  if (ctx.selects("sphere")) {
    const GeometryInstance s = ctx.geometry("sphere");
    Calculus calc(s.geometry, ctx.engine());
    ctx.check("stress.sphere.pressure_force", "F = 0 for sigma = p P with constant p on the closed sphere", 1e-8,
              [&](std::mt19937_64&) {
                return bound(norm(stress_force(calc, s.atlas, scaled_field(1.7, calc.frames().projector()))));
              });
  }

  ctx.check("stress.frames.constrained_family",
            "omega_K . sigma-bar = 0 implies normal_at_tangential = 0 for sigma = a P + sum n_k (x) v_k + S", 1e-10,
            [&](std::mt19937_64& rng) {
              std::uniform_int_distribution<int> dims(3, 4);
              std::normal_distribution<double> gauss;
              double worst = 0.0;
              for (int f = 0; f < kFrames; ++f) {
                const int n = dims(rng);
                const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
                std::vector<Vector> grads(m, Vector(n));
                for (auto& g : grads)
                  for (double& v : g) v = gauss(rng);
                const GeometryFrame frame = frame_from_gradients(random_vector(n, rng), 0.0, grads);

                Tensor sigma = gauss(rng) * frame.P;
                for (const auto& nk : frame.normals)
                  sigma += outer(Tensor::covector(nk), Tensor::covector(random_vector(n, rng)));
                const Tensor a = random_tensor(n, 2, rng);
                sigma += project(frame, a + transpose2(a));

                // omega_ij . sigma-bar = (sigma-bar P)_ij - (sigma-bar P)_ji
                const Tensor sp = bigcirc(transpose2(sigma), frame.P);
                for (int i = 0; i < n; ++i)
                  for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(sp.at({i, j}) - sp.at({j, i})));
                worst = std::max(worst, normal_at_tangential(frame, sigma));
              }
              return bound(worst);
            });
}

void evolving(Context& ctx) {
  const Metric rel = Metric::rel;
  const double dt = 1e-3;

  if (ctx.selects("expanding_sphere")) {
    const GeometryInstance e = ctx.geometry("expanding_sphere");
    Calculus calc(e.geometry, ctx.engine());
    const TensorField& w = *e.velocity;
    const double r0 = e.param("R0"), c = e.param("c");

    ctx.check("evolving.expanding_sphere.reynolds_area", "d/dt int 1 = int div_M w = 8 pi R c", 1e-6,
              [&](std::mt19937_64&) {
                const IdentityResidual r = reynolds_residual(calc, e.atlas, unit_density(), w, 0.0, dt);
                Worst out(rel);
                out.add(against(r.lhs, Tensor::scalar(8.0 * kPi * r0 * c, 3), rel));
                out.add(against(r.rhs, Tensor::scalar(8.0 * kPi * r0 * c, 3), rel));
                return out.result();
              });
    ctx.check("evolving.expanding_sphere.reynolds_position", "d/dt int x = int D_w x + int (div_M w) x", 1e-5,
              [&](std::mt19937_64&) { return from_residual(reynolds_residual(calc, e.atlas, position_field(3), w, 0.0, dt), rel); });

    ctx.check("evolving.expanding_sphere.projector_rate_zero", "C[w] = 0 under uniform expansion",
              ctx.pick(1e-6, 1e-10),
              [&](std::mt19937_64&) { return bound(max_norm_over_nodes(e.atlas.with_settings({4, 1}), calc.projector_rate(w))); });

    ctx.check("evolving.expanding_sphere.material_paths", "level functions vanish along material paths", 1e-6,
              [&](std::mt19937_64&) {
                double worst = 0.0;
                for (double step : {0.1, 0.5})
                  worst = std::max(worst, max_level_violation(moved_atlas(e.atlas, w, 0.0, step), step));
                return bound(worst);
              });

    const TensorField z = coordinate(2);
    ctx.check("evolving.sphere.dirichlet_energy", "E = 1/2 int |P e_z|^2 = 4 pi R^2 / 3 for f = z", 1e-10,
              [&](std::mt19937_64&) {
                const GeometryInstance s = ctx.geometry("sphere");
                Calculus sc(s.geometry, ctx.engine());
                const double r = s.param("R");
                return against(dirichlet_energy(sc, s.atlas, z), 4.0 * kPi * r * r / 3.0, rel);
              });
    ctx.check("evolving.expanding_sphere.dirichlet_rate_rank0", "dE/dt formula against the moved-atlas difference",
              1e-4, [&](std::mt19937_64&) {
                const double a = dirichlet_rate(calc, e.atlas, z, w, 0.0);
                const double b = dirichlet_rate_fd(calc, e.atlas, z, w, 0.0, dt);
                return compare(a, b, rel);
              });
    ctx.check("evolving.expanding_sphere.dirichlet_rate_closed_form", "dE/dt = 8 pi R c / 3 for f = z",
              ctx.pick(1e-6, 1e-9), [&](std::mt19937_64&) {
                return against(dirichlet_rate(calc, e.atlas, z, w, 0.0), 8.0 * kPi * r0 * c / 3.0, rel);
              });

    const Atlas coarse = e.atlas.with_settings({8, 2});
    auto rank2 = [&](const TensorField& t) {
      const double a = dirichlet_rate(calc, coarse, t, w, 0.0);
      const double b = dirichlet_rate_fd(calc, coarse, t, w, 0.0, dt);
      Outcome o = compare(a, b, rel);
      o.rel = std::abs(a - b) / std::max(1e-300, std::abs(b));
      return o;
    };
    ctx.check("evolving.expanding_sphere.dirichlet_rate_rank2_ez", "dE/dt formula against the difference for P(e_z (x) e_z)",
              1e-3, [&](std::mt19937_64&) {
                const Tensor ez = Tensor::covector({0, 0, 1});
                Outcome o = rank2(calc.projected(constant_field(outer(ez, ez), 3)));
                // The energy is scale invariant, so the exact rate is 0.
                o.rel = o.abs;
                return o;
              });
    ctx.check("evolving.expanding_sphere.dirichlet_rate_rank2_xx", "dE/dt formula against the difference for x (x) x",
              1e-3, [&](std::mt19937_64&) {
                return rank2(outer_field(position_field(3), position_field(3)));
              });
  }

  struct Scenario {
    std::string name;
    double t;
  };
  for (const Scenario& sc : std::vector<Scenario>{{"expanding_sphere", 0.0}, {"translating_plane", 0.2}, {"rotating_plane", 0.3}}) {
    if (!ctx.selects(sc.name)) continue;
    const GeometryInstance g = ctx.geometry(sc.name);
    Calculus calc(g.geometry, ctx.engine());
    const TensorField& w = *g.velocity;
    const Atlas coarse = g.atlas.with_settings({4, 1});
    const std::string base = "evolving." + sc.name;

    ctx.check(base + ".commutators", "ambient and submanifold commutators of D_w with the gradients vanish", 1e-4,
              [&](std::mt19937_64& rng) {
                const CommutatorResidual r = commutator_residuals(calc, coarse, random_field(3, 1, rng, 2, 1), w, sc.t);
                return bound(std::max(r.ambient, r.submanifold));
              });
    ctx.check(base + ".projected_rate", "P C[w] = 0", 1e-6, [&](std::mt19937_64& rng) {
      return bound(commutator_residuals(calc, coarse, random_field(3, 0, rng), w, sc.t).projected_rate);
    });
    ctx.check(base + ".projector_rate", "D_w P + 2 C[w] = 0 and D_w n + n : grad w = 0", 1e-5,
              [&](std::mt19937_64& rng) {
                const CommutatorResidual r = commutator_residuals(calc, coarse, random_field(3, 0, rng), w, sc.t);
                return bound(std::max(r.projector_rate, r.normal_rate));
              });
  }

  if (ctx.selects("translating_plane")) {
    const GeometryInstance g = ctx.geometry("translating_plane");
    Calculus calc(g.geometry, ctx.engine());
    ctx.check("evolving.translating_plane.projector_rate_zero", "C[w] = 0 under translation", ctx.pick(1e-6, 1e-10),
              [&](std::mt19937_64&) {
                return bound(max_norm_over_nodes(g.atlas.with_settings({4, 1}), calc.projector_rate(*g.velocity), 0.2));
              });
  }
  if (ctx.selects("rotating_plane")) {
    const GeometryInstance g = ctx.geometry("rotating_plane");
    Calculus calc(g.geometry, ctx.engine());
    ctx.check("evolving.rotating_plane.projector_rate_nonzero", "|C[w]| > 0 when the plane tilts", 1e-3,
              [&](std::mt19937_64&) {
                return at_least(max_norm_over_nodes(g.atlas.with_settings({4, 1}), calc.projector_rate(*g.velocity), 0.3));
              });
    ctx.check("evolving.rotating_plane.material_paths", "level functions vanish along material paths", 1e-6,
              [&](std::mt19937_64&) {
                const double step = 0.1 / g.param("omega");
                return bound(max_level_violation(moved_atlas(g.atlas, *g.velocity, 0.0, step), step));
              });
  }
}

}  // namespace xtc::suites
