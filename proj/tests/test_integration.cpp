#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "xtc/integration.hpp"
#include "xtc/polynomial.hpp"
#include "xtc/quadrature.hpp"
#include "xtc/registry.hpp"

using namespace xtc;

namespace {

Vector operator-(const Vector& a, const Vector& b) { return axpy(-1.0, b, a); }

}  // namespace

namespace {

constexpr double kPi = std::numbers::pi;

TensorField one() { return constant_field(Tensor::scalar(1.0, 3), 3); }

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2p - 1") {
  for (int p : {1, 2, 5, 16, 40}) {
    const GaussRule& rule = gauss_legendre(p);
    for (int k = 0; k <= 2 * p - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < p; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("areas and lengths") {
  CHECK(integrate(make_geometry("sphere", {{"R", 2.0}}).atlas, one()).value() ==
        doctest::Approx(16.0 * kPi).epsilon(1e-12));
  const GeometryInstance t = make_geometry("torus");
  CHECK(integrate(t.atlas, one()).value() == doctest::Approx(4.0 * kPi * kPi * 2.0 * 0.5).epsilon(1e-12));
  CHECK(integrate(make_geometry("circle3d").atlas, one()).value() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  const GeometryInstance h = make_geometry("helix_segment");
  CHECK(integrate(h.atlas, one()).value() == doctest::Approx(2.0 * kPi * std::sqrt(1.04)).epsilon(1e-12));
  CHECK(integrate(make_geometry("hemisphere").atlas, one()).value() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("hemisphere e_z splits into boundary and curvature terms") {
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    const GeometryInstance h = make_geometry("hemisphere");
    Calculus c(h.geometry, DerivativeEngine({mode}));
    const IdentityResidual r = stokes_residual(c, h.atlas, constant_field(Tensor::covector({0, 0, 1}), 3));
    CHECK(r.term("interior").value() == doctest::Approx(0.0));
    CHECK(r.term("boundary").value() == doctest::Approx(-2.0 * kPi).epsilon(1e-6));
    CHECK(r.term("curvature").value() == doctest::Approx(2.0 * kPi).epsilon(1e-6));
    CHECK(r.abs <= 1e-6);
  }
}

TEST_CASE("boundary orientation on the hemisphere rim") {
  const GeometryInstance h = make_geometry("hemisphere");
  Calculus c(h.geometry, DerivativeEngine({DerivativeMode::analytic}));
  const auto nodes = h.atlas.boundary_nodes(c);
  REQUIRE_FALSE(nodes.empty());
  for (const auto& b : nodes) {
    CHECK(norm(b.conormal - Vector{0, 0, -1}) <= 1e-12);
    const Vector n = c.frame(b.x).normals[0];
    CHECK(determinant({b.conormal, b.tau, n}) == doctest::Approx(1.0).epsilon(1e-12));
    // Positive orientation gives tau = e_z x x on the rim, so (0, 1, 0) at (1, 0, 0).
    CHECK(norm(b.tau - Vector{-b.x[1], b.x[0], 0}) <= 1e-12);
  }
}

TEST_CASE("zero-dimensional boundaries use the counting measure") {
  const GeometryInstance h = make_geometry("helix_segment");
  Calculus c(h.geometry, DerivativeEngine({DerivativeMode::analytic}));
  const Tensor count = integrate_boundary(
      h.atlas, c, [](const BoundaryNode&) { return Tensor::scalar(1.0, 3); }, {3, 0});
  CHECK(count.value() == 2.0);
  const TensorField z = polynomial_field({{3, 0}, {Polynomial::variable(3, 2)}});
  CHECK(endpoint_difference(h.atlas, z).value() == doctest::Approx(2.0 * kPi * 0.2).epsilon(1e-14));
}

TEST_CASE("Stokes and integration by parts for random fields") {
  std::mt19937_64 rng(17);
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    const double tol = mode == DerivativeMode::analytic ? 1e-10 : 1e-6;
    for (const char* name : {"hemisphere", "plane_disk", "helix_segment"}) {
      const GeometryInstance g = make_geometry(name);
      Calculus c(g.geometry, DerivativeEngine({mode}));
      const TensorField u = polynomial_field(random_polynomial_tensor(3, 1, 2, rng));
      CHECK(stokes_residual(c, g.atlas, u).rel <= tol);
    }
    const GeometryInstance h = make_geometry("hemisphere");
    Calculus c(h.geometry, DerivativeEngine({mode}));
    const TensorField s = polynomial_field(random_polynomial_tensor(3, 1, 2, rng));
    const TensorField t = polynomial_field(random_polynomial_tensor(3, 2, 2, rng));
    CHECK(integration_by_parts_residual(c, h.atlas, s, t).rel <= 1e-5);
  }
}

TEST_CASE("path fundamental theorem on the helix") {
  std::mt19937_64 rng(19);
  const GeometryInstance h = make_geometry("helix_segment");
  Calculus c(h.geometry, DerivativeEngine({DerivativeMode::fd2}));
  for (int q = 0; q <= 2; ++q)
    CHECK(path_ftc_residual(c, h.atlas, polynomial_field(random_polynomial_tensor(3, q, 3, rng))).rel <= 1e-6);
}

TEST_CASE("circulation on the disk") {
  PolynomialTensor u{{3, 1}, std::vector<Polynomial>(3, Polynomial(3))};
  u.leaves[0].add_term(-1.0, std::vector<int>{0, 1});
  u.leaves[1].add_term(1.0, std::vector<int>{1});
  const GeometryInstance d = make_geometry("plane_disk");
  Calculus c(d.geometry, DerivativeEngine({DerivativeMode::fd2}));
  const IdentityResidual r = circulation_residual(c, d.atlas, polynomial_field(u));
  CHECK(r.lhs.value() == doctest::Approx(2.0 * kPi).epsilon(1e-8));
  CHECK(r.rhs.value() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("material paths stay on the moving geometry") {
  const GeometryInstance e = make_geometry("expanding_sphere");
  const Atlas moved = moved_atlas(e.atlas, *e.velocity, 0.0, 0.1);
  CHECK(max_level_violation(moved, 0.1) <= 1e-6);
  CHECK(integrate(moved, one(), 0.1).value() == doctest::Approx(4.0 * kPi * 1.01 * 1.01).epsilon(1e-9));
}
