#include <cmath>
#include <random>

#include "doctest.h"
#include "xtc/differential.hpp"
#include "xtc/errors.hpp"
#include "xtc/polynomial.hpp"
#include "xtc/registry.hpp"

using namespace xtc;

namespace {

constexpr DerivativeMode kModes[] = {DerivativeMode::fd2, DerivativeMode::fd4, DerivativeMode::analytic};

double tol(DerivativeMode m, double fd, double exact) { return m == DerivativeMode::analytic ? exact : fd; }

TensorField rotation() {
  PolynomialTensor u{{3, 1}, std::vector<Polynomial>(3, Polynomial(3))};
  u.leaves[0].add_term(-1.0, std::vector<int>{0, 1});
  u.leaves[1].add_term(1.0, std::vector<int>{1});
  return polynomial_field(u);
}

}  // namespace

TEST_CASE("finite differences are exact on affine fields") {
  const Tensor a(3, 2, {1, 2, 3, -1, 0.5, 4, 0, 2, -3});
  const TensorField f({3, 1}, [a](std::span<const double> x, double) { return insert_right(a, x); });
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::fd4}) {
    const DerivativeEngine e({mode});
    CHECK(max_abs(e.gradient(f, Vector{0.3, -0.2, 0.7}) - a) <= 1e-9);
  }
}

TEST_CASE("nesting depth and stencil domain") {
  const DerivativeEngine e({DerivativeMode::fd2});
  TensorField f = polynomial_field({{3, 0}, {Polynomial::variable(3, 0)}});
  f = TensorField(f.shape(), [f](std::span<const double> x, double t) { return f(x, t); });
  TensorField g = f;
  for (int k = 0; k < kMaxNesting; ++k) g = e.gradient_field(g);
  CHECK_THROWS_AS(e.gradient_field(g)(Vector{0.1, 0.2, 0.3}), NumericalError);

  const TensorField boxed = f.with_domain([](std::span<const double> x, double) { return x[0] < 1.0; });
  CHECK_THROWS_AS(e.gradient(boxed, Vector{1.0 - 1e-9, 0, 0}), StencilError);
}

TEST_CASE("mean curvature vector on spheres and circles") {
  for (auto mode : kModes) {
    const DerivativeEngine e({mode});
    {
      const GeometryInstance s = make_geometry("sphere", {{"R", 2.0}});
      Calculus c(s.geometry, e);
      CHECK(norm(c.mean_curvature()(Vector{2, 0, 0}) - Tensor::covector({1, 0, 0})) <= tol(mode, 1e-5, 1e-12));
    }
    {
      const GeometryInstance s = make_geometry("circle2d", {{"R", 2.0}});
      Calculus c(s.geometry, e);
      CHECK(norm(c.mean_curvature()(Vector{0, 2}) - Tensor::covector({0, 0.5})) <= tol(mode, 1e-5, 1e-12));
    }
    {
      const GeometryInstance s = make_geometry("circle3d", {{"R", 0.5}});
      Calculus c(s.geometry, e);
      const Tensor k = c.mean_curvature()(Vector{0, 0.5, 0});
      CHECK(norm(k - Tensor::covector({0, 2, 0})) <= tol(mode, 1e-5, 1e-12));
    }
  }
}

TEST_CASE("surface divergence and Laplacian of the position field") {
  const Vector x{0.48, 0.6, 0.64};
  for (auto mode : kModes) {
    const GeometryInstance s = make_geometry("sphere");
    Calculus c(s.geometry, DerivativeEngine({mode}));
    CHECK(c.divergence(position_field(3))(x).value() == doctest::Approx(2.0).epsilon(tol(mode, 1e-8, 1e-13)));
    const Tensor lap = c.laplacian(position_field(3))(x);
    CHECK(norm(lap + 2.0 * Tensor::covector(x)) <= tol(mode, 1e-4, 1e-10));
  }
}

TEST_CASE("curl of the rotation field on the plane") {
  for (auto mode : kModes) {
    const GeometryInstance d = make_geometry("plane_disk");
    Calculus c(d.geometry, DerivativeEngine({mode}));
    CHECK(c.curl(rotation())(Vector{0.2, 0.3, 0}).value() == doctest::Approx(2.0).epsilon(tol(mode, 1e-8, 1e-12)));
  }
}

TEST_CASE("covariant Laplacian of the rotation field on the unit sphere") {
  const Vector x{0.48, 0.6, 0.64};
  for (auto mode : kModes) {
    const GeometryInstance s = make_geometry("sphere");
    Calculus c(s.geometry, DerivativeEngine({mode}));
    const TensorField u = rotation();
    CHECK(norm(c.covariant_laplacian(u)(x) + u(x)) <= tol(mode, 1e-3, 1e-10) * norm(u(x)));
  }
}

TEST_CASE("material derivative of |x| under uniform expansion") {
  const GeometryInstance g = make_geometry("expanding_sphere");
  Calculus c(g.geometry, DerivativeEngine({DerivativeMode::analytic}));
  const TensorField r({3, 0}, [](std::span<const double> x, double) { return Tensor::scalar(norm(x), 3); });
  const double rate = c.material_derivative(r, *g.velocity)(Vector{0, 0.6, 0.8}).value();
  CHECK(rate == doctest::Approx(g.param("c")).epsilon(1e-6));
}

TEST_CASE("projector rate vanishes for rigid translation and is nonzero for rotation") {
  const DerivativeEngine e({DerivativeMode::analytic});
  const GeometryInstance t = make_geometry("translating_plane");
  CHECK(max_abs(Calculus(t.geometry, e).projector_rate(*t.velocity)(Vector{0.1, 0.2, 0.02}, 0.2)) <= 1e-10);
  const GeometryInstance r = make_geometry("rotating_plane");
  CHECK(max_abs(Calculus(r.geometry, e).projector_rate(*r.velocity)(Vector{0.3, 0.2, 0}, 0.0)) > 1e-3);
}
