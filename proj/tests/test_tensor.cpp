#include <random>

#include "doctest.h"
#include "xtc/tensor.hpp"

using namespace xtc;

namespace {

Tensor random_tensor(int n, int q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t(n, q);
  for (double& v : t.leaves()) v = u(rng);
  return t;
}

Vector random_vector(int n, std::mt19937_64& rng) { return random_tensor(n, 1, rng).data(); }

// Independent oracle: sum over every index tuple of T_{i1..iq} v1_{i1} .. vq_{iq}.
double brute_evaluate(const Tensor& t, const std::vector<Vector>& args) {
  const int n = t.dim(), q = t.rank();
  std::vector<int> idx(q, 0);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    double term = t[flat];
    for (int k = 0; k < q; ++k) term *= args[k][idx[k]];
    sum += term;
    for (int k = q - 1; k >= 0; --k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("leaves follow lexicographic basis tuples") {
  Tensor t(3, 2, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(t.at({0, 2}) == 3);
  CHECK(t.at({2, 1}) == 8);
  const Vector e0 = unit_vector(3, 0), e2 = unit_vector(3, 2);
  CHECK(t.evaluate(std::vector<Vector>{e2, e0}) == 7);
  CHECK(t.row(1).data() == Vector{4, 5, 6});
}

TEST_CASE("evaluate matches the index-sum oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, q = trial % 5;
    const Tensor t = random_tensor(n, q, rng);
    std::vector<Vector> args;
    for (int k = 0; k < q; ++k) args.push_back(random_vector(n, rng));
    CHECK(t.evaluate(args) == doctest::Approx(brute_evaluate(t, args)).epsilon(1e-12));
  }
}

TEST_CASE("bigcirc of rank-2 tensors is the matrix product") {
  const Tensor a(2, 2, {1, 2, 3, 4}), b(2, 2, {5, 6, 7, 8});
  CHECK(bigcirc(a, b).data() == Vector{19, 22, 43, 50});
  std::mt19937_64 rng(3);
  const Tensor t = random_tensor(3, 3, rng);
  CHECK(norm(bigcirc(t, Tensor::identity(3)) - t) == 0.0);
}

TEST_CASE("bigcirc is associative when the middle factor has rank at least 2") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const Tensor t = random_tensor(n, 1 + trial % 3, rng);
    const Tensor s = random_tensor(n, 2 + trial % 2, rng);
    const Tensor r = random_tensor(n, 1 + trial % 2, rng);
    const Tensor lhs = bigcirc(bigcirc(t, s), r), rhs = bigcirc(t, bigcirc(s, r));
    CHECK(norm(lhs - rhs) <= 1e-12 * std::max(1.0, norm(lhs)));
  }
}

TEST_CASE("bigcirc with a rank-1 middle factor is not associative") {
  // (T o s) o R contracts T's first slot with R, T o (s o R) keeps it.
  const Tensor t(2, 2, {1, 2, 3, 4}), s = Tensor::covector({1, 0}), r(2, 2, {0, 1, 0, 0});
  const Tensor lhs = bigcirc(bigcirc(t, s), r), rhs = bigcirc(t, bigcirc(s, r));
  CHECK(lhs.data() == Vector{0, 1});
  CHECK(rhs.data() == Vector{2, 4});
}

TEST_CASE("insertions commute and detect zero") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, q = 2 + trial % 3;
    const Tensor t = random_tensor(n, q, rng);
    const Vector v = random_vector(n, rng), w = random_vector(n, rng);
    const Tensor a = insert_right(insert_left(t, v), w), b = insert_left(insert_right(t, w), v);
    CHECK(norm(a - b) <= 1e-12 * std::max(1.0, norm(a)));
  }
  const Tensor zero(3, 2);
  for (int k = 0; k < 3; ++k) CHECK(norm(insert_right(zero, unit_vector(3, k))) == 0.0);
  Tensor one(3, 2);
  one.at({1, 2}) = 1.0;
  CHECK(norm(insert_right(one, unit_vector(3, 2))) == 1.0);
}

TEST_CASE("contractions") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4, q = 2 + trial % 3, s = 1 + trial % (q - 1);
    const Tensor a = random_tensor(n, s, rng), t = random_tensor(n, q, rng);
    const Vector v = random_vector(n, rng);
    const Tensor lhs = insert_right(contract_left(a, t), v);
    const Tensor rhs = contract_left(a, insert_right(t, v));
    CHECK(norm(lhs - rhs) <= 1e-12 * std::max(1.0, norm(lhs)));
  }
  const Tensor a = random_tensor(3, 2, rng), b = random_tensor(3, 2, rng);
  CHECK(contract_left(a, b).value() == doctest::Approx(frobenius(a, b)).epsilon(1e-14));
  const Vector u = random_vector(3, rng);
  CHECK(norm(contract_right(a, Tensor::covector(u)) - insert_right(a, u)) <= 1e-15);
}

TEST_CASE("Frobenius product") {
  std::mt19937_64 rng(13);
  const Tensor a = random_tensor(4, 1, rng), b = random_tensor(4, 1, rng);
  const Tensor c = random_tensor(4, 1, rng), d = random_tensor(4, 1, rng);
  CHECK(frobenius(outer(a, b), outer(c, d)) == doctest::Approx(frobenius(a, c) * frobenius(b, d)).epsilon(1e-13));
  CHECK(frobenius(a, c) == frobenius(c, a));
}

TEST_CASE("transpose") {
  const Tensor t(2, 2, {1, 2, 3, 4});
  CHECK(transpose2(t).data() == Vector{1, 3, 2, 4});
  CHECK(transpose2(transpose2(t)).data() == t.data());
  const Vector v{0.5, -2.0};
  CHECK(norm(insert_right(transpose2(t), v) - insert_left(t, v)) <= 1e-15);
}

TEST_CASE("shape errors are raised before work starts") {
  const Tensor a(3, 2), b(2, 2);
  CHECK_THROWS_AS(a + b, ShapeError);
  CHECK_THROWS_AS(bigcirc(Tensor::scalar(1.0, 3), a), ShapeError);
  CHECK_THROWS_AS(transpose2(Tensor(3, 3)), ShapeError);
  CHECK_THROWS_AS(Tensor(3, 2, {1.0, 2.0}), ShapeError);
}
