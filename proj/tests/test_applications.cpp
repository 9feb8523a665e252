#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "xtc/applications.hpp"
#include "xtc/polynomial.hpp"
#include "xtc/registry.hpp"

using namespace xtc;

namespace {

constexpr double kPi = std::numbers::pi;

FlowState rigid_rotation(double omega, bool with_pressure = true) {
  PolynomialTensor u{{3, 1}, std::vector<Polynomial>(3, Polynomial(3))};
  u.leaves[0].add_term(-omega, std::vector<int>{0, 1});
  u.leaves[1].add_term(omega, std::vector<int>{1});
  Polynomial p(3);
  if (with_pressure) {
    p.add_term(0.5 * omega * omega, std::vector<int>{2});
    p.add_term(0.5 * omega * omega, std::vector<int>{0, 2});
  }
  return {polynomial_field(u), polynomial_field({{3, 0}, {p}}), constant_field(Tensor::scalar(1.0, 3), 3)};
}

}  // namespace

TEST_CASE("rigid rotation is a steady Euler flow on the sphere") {
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    const GeometryInstance s = make_geometry("sphere");
    Calculus c(s.geometry, DerivativeEngine({mode}));
    const FlowState st = rigid_rotation(1.5);
    const EulerResidual r = euler_residual(c, s.atlas.with_settings({6, 1}), st);
    CHECK(r.momentum <= 1e-5);
    CHECK(r.divergence <= 1e-5);
    CHECK(r.divergence_form <= 1e-5);
    CHECK(r.form_identity <= 1e-5);
    CHECK(norm(extrinsic_momentum(s.atlas, st)) <= 1e-8);
    CHECK(force_balance_residual(c, s.atlas, st).abs <= 1e-6 * 1.5 * 1.5 * 4.0 * kPi);
  }
}

TEST_CASE("dropping the pressure leaves the centripetal term") {
  const GeometryInstance s = make_geometry("sphere");
  Calculus c(s.geometry, DerivativeEngine({DerivativeMode::analytic}));
  const EulerResidual r = euler_residual(c, s.atlas.with_settings({6, 1}), rigid_rotation(1.5, false));
  CHECK(r.momentum > 0.1);
}

TEST_CASE("tangent velocity lemma") {
  const GeometryInstance h = make_geometry("hemisphere");
  Calculus c(h.geometry, DerivativeEngine({DerivativeMode::fd2}));
  CHECK(tangent_velocity_residual(c, h.atlas, constant_field(Tensor::covector({0, 0, 1}), 3)).rel <= 1e-6);
}

TEST_CASE("generators and torque identities on the hemisphere") {
  std::mt19937_64 rng(23);
  const GeometryInstance h = make_geometry("hemisphere");
  CHECK(rotation_generators(3).size() == 3);
  CHECK(rotation_generators(4).size() == 6);
  const TensorField l = rotation_generator(3, {0, 1});
  CHECK(norm(l(Vector{2, 3, 5}) - Tensor::covector({-3, 2, 0})) == 0.0);
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    Calculus c(h.geometry, DerivativeEngine({mode}));
    const TensorField a = polynomial_field(random_polynomial_tensor(3, 2, 2, rng));
    for (const auto k : rotation_generators(3)) {
      CHECK(generator_identity_residual(c, h.atlas, a, k).abs <= 1e-5);
      CHECK(torque_equivalence_residual(c, h.atlas, a, k).abs <= 1e-5);
    }
  }
}

TEST_CASE("stress forces in closed form") {
  const DerivativeEngine e({DerivativeMode::analytic});
  const GeometryInstance h = make_geometry("hemisphere");
  Calculus ch(h.geometry, e);
  const TensorField n = ch.frames().normal(0);
  const Tensor f = stress_force(ch, h.atlas, outer_field(n, n));
  CHECK(norm(f - Tensor::covector({0, 0, 2.0 * kPi})) <= 1e-10);
  const GeometryInstance s = make_geometry("sphere");
  Calculus cs(s.geometry, e);
  CHECK(norm(stress_force(cs, s.atlas, cs.frames().projector())) <= 1e-10);
}

TEST_CASE("normal stress on tangential directions") {
  const GeometryFrame f = frame_from_gradients(Vector{0, 0, 1}, 0.0, {{0, 0, 1}});
  const Vector w{0.3, -0.4, 0.0};
  const Tensor shear = outer(Tensor::covector(w), Tensor::covector({0, 0, 1}));
  CHECK(normal_at_tangential(f, shear) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_at_tangential(f, transpose2(shear)) == 0.0);
  CHECK(normal_at_tangential(f, 3.0 * f.P) == 0.0);
}

TEST_CASE("Dirichlet energy and its rate") {
  const TensorField z = polynomial_field({{3, 0}, {Polynomial::variable(3, 2)}});
  const GeometryInstance s = make_geometry("sphere");
  Calculus cs(s.geometry, DerivativeEngine({DerivativeMode::fd2}));
  CHECK(dirichlet_energy(cs, s.atlas, z) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-8));
  CHECK(dirichlet_energy(cs, s.atlas, scaled_field(3.0, z)) == doctest::Approx(12.0 * kPi).epsilon(1e-8));

  const GeometryInstance e = make_geometry("expanding_sphere");
  Calculus ce(e.geometry, DerivativeEngine({DerivativeMode::analytic}));
  const double rate = dirichlet_rate(ce, e.atlas, z, *e.velocity, 0.0);
  CHECK(rate == doctest::Approx(8.0 * kPi * 0.1 / 3.0).epsilon(1e-9));
  const double fd = dirichlet_rate_fd(ce, e.atlas, z, *e.velocity, 0.0, 1e-3);
  CHECK(std::abs(rate - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("Reynolds transport of the area") {
  const GeometryInstance e = make_geometry("expanding_sphere");
  Calculus c(e.geometry, DerivativeEngine({DerivativeMode::fd2}));
  const IdentityResidual r =
      reynolds_residual(c, e.atlas, constant_field(Tensor::scalar(1.0, 3), 3), *e.velocity, 0.0, 1e-3);
  CHECK(r.lhs.value() == doctest::Approx(8.0 * kPi * 0.1).epsilon(1e-6));
  CHECK(r.rhs.value() == doctest::Approx(8.0 * kPi * 0.1).epsilon(1e-6));
}

TEST_CASE("commutator lemmas on a rotating plane") {
  std::mt19937_64 rng(29);
  const GeometryInstance g = make_geometry("rotating_plane");
  Calculus c(g.geometry, DerivativeEngine({DerivativeMode::fd2}));
  const TensorField f = polynomial_field(random_polynomial_tensor(3, 1, 2, rng, 1));
  const CommutatorResidual r = commutator_residuals(c, g.atlas.with_settings({4, 1}), f, *g.velocity, 0.3);
  CHECK(r.ambient <= 1e-4);
  CHECK(r.submanifold <= 1e-4);
  CHECK(r.projected_rate <= 1e-6);
  CHECK(r.projector_rate <= 1e-5);
  CHECK(r.normal_rate <= 1e-5);
}
