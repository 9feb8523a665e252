#include <cmath>
#include <random>

#include "doctest.h"
#include "xtc/errors.hpp"
#include "xtc/geometry.hpp"
#include "xtc/registry.hpp"

using namespace xtc;

namespace {

Vector operator-(const Vector& a, const Vector& b) { return axpy(-1.0, b, a); }

}  // namespace

namespace {

double max_diff(const Tensor& a, const Tensor& b) { return max_abs(a - b); }

// T(P v_1, .., P v_q) on every basis tuple, written out by hand.
Tensor brute_projection(const GeometryFrame& f, const Tensor& t) {
  const int n = t.dim(), q = t.rank();
  Tensor out(n, q);
  std::vector<int> idx(q, 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::vector<Vector> args;
    for (int k = 0; k < q; ++k) args.push_back(f.P.row(idx[k]).data());
    out[flat] = t.evaluate(args);
    for (int k = q - 1; k >= 0; --k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  return out;
}

GeometryFrame frame_at(const std::string& name, const Point& x, DerivativeMode mode = DerivativeMode::analytic) {
  const GeometryInstance g = make_geometry(name);
  return compute_frame(*g.geometry, DerivativeEngine({mode}), x);
}

}  // namespace

TEST_CASE("sphere frame at (1, 0, 0)") {
  for (auto mode : {DerivativeMode::fd2, DerivativeMode::analytic}) {
    const GeometryFrame f = frame_at("sphere", {1, 0, 0}, mode);
    CHECK(norm(f.normals[0] - Vector{1, 0, 0}) <= 1e-9);
    CHECK(max_diff(f.P, Tensor(3, 2, {0, 0, 0, 0, 1, 0, 0, 0, 1})) <= 1e-9);
  }
}

TEST_CASE("codimension-2 circle keeps the level-function order") {
  const GeometryFrame f = frame_at("circle3d", {1, 0, 0});
  REQUIRE(f.codim() == 2);
  CHECK(norm(f.normals[0] - Vector{0, 0, 1}) <= 1e-12);
  CHECK(norm(f.normals[1] - Vector{1, 0, 0}) <= 1e-12);
  CHECK(max_diff(f.P, Tensor(3, 2, {0, 0, 0, 0, 1, 0, 0, 0, 0})) <= 1e-12);
}

TEST_CASE("Gram-Schmidt follows the listed order") {
  const GeometryFrame f = frame_from_gradients(Vector{0, 0, 0}, 0.0, {{2, 0, 0}, {1, 1, 0}});
  CHECK(norm(f.normals[0] - Vector{1, 0, 0}) <= 1e-15);
  CHECK(norm(f.normals[1] - Vector{0, 1, 0}) <= 1e-15);
  CHECK_THROWS_AS(frame_from_gradients(Vector{0, 0, 0}, 0.0, {{1, 0, 0}, {2, 0, 0}}), DegenerateGeometryError);
}

TEST_CASE("recursive projection matches the brute-force oracle") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 2;
    std::vector<Vector> grads(m, Vector(3));
    for (auto& v : grads)
      for (double& c : v) c = g(rng);
    const GeometryFrame f = frame_from_gradients(Vector{0, 0, 0}, 0.0, grads);
    for (int q = 0; q <= 3; ++q) {
      Tensor t(3, q);
      for (double& v : t.leaves()) v = g(rng);
      const Tensor p = project(f, t);
      CHECK(max_diff(p, brute_projection(f, t)) <= 1e-12);
      CHECK(max_diff(project(f, p), p) <= 1e-12);
      CHECK(is_tangent(f, p));
    }
  }
}

TEST_CASE("dagger is a positive quarter turn") {
  const GeometryFrame f = frame_at("plane_disk", {0.2, 0.1, 0});
  CHECK(norm(dagger(f, Vector{1, 0, 0}) - Vector{0, 1, 0}) <= 1e-14);
  CHECK(norm(dagger(f, Vector{0, 1, 0}) - Vector{-1, 0, 0}) <= 1e-14);
  // The normal part is dropped.
  CHECK(norm(dagger(f, Vector{0, 0, 1})) <= 1e-14);
  const Tensor r = rotation_tensor(f);
  CHECK(norm(insert_right(r, Vector{1, 0, 0}) - Tensor::covector({0, 1, 0})) <= 1e-14);
}

TEST_CASE("tube and degenerate points") {
  const GeometryInstance s = make_geometry("sphere");
  CHECK(s.geometry->in_tube(Vector{1.05, 0, 0}));
  CHECK_FALSE(s.geometry->in_tube(Vector{3, 0, 0}));
  CHECK_THROWS(compute_frame(*s.geometry, DerivativeEngine({DerivativeMode::analytic}), Vector{0, 0, 0}));
}

TEST_CASE("geometry registry") {
  CHECK_THROWS_AS(make_geometry("klein_bottle"), ConfigError);
  CHECK_THROWS_AS(make_geometry("sphere", {{"R", -1.0}}), ConfigError);
  CHECK_THROWS_AS(make_geometry("sphere", {{"radius", 1.0}}), ConfigError);
  CHECK_THROWS_AS(make_geometry("torus", {{"R", 1.0}, {"r", 2.0}}), ConfigError);
  const GeometryParams p = parse_geometry_params("R=2,r=0.25");
  CHECK(p.at("R") == 2.0);
  CHECK(p.at("r") == 0.25);
  CHECK_THROWS_AS(parse_geometry_params("R"), ConfigError);
  CHECK(make_geometry("hemisphere", {{"R", 3.0}}).param("R") == 3.0);
}
