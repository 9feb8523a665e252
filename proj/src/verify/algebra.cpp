#include <cmath>

#include "context.hpp"

namespace xtc::suites {
namespace {

constexpr int kInstances = 1000;

// Sum over all index tuples of leaf * v_1[i_1] * ... * v_q[i_q].
double brute_evaluate(const Tensor& t, const std::vector<Vector>& args) {
  const int n = t.dim();
  double total = 0.0;
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    double term = t[flat];
    std::size_t rest = flat;
    for (int k = t.rank() - 1; k >= 0; --k) {
      term *= args[k][rest % n];
      rest /= n;
    }
    total += term;
  }
  return total;
}

struct Draw {
  std::mt19937_64& rng;
  int dim() { return std::uniform_int_distribution<int>(1, 4)(rng); }
  int rank(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Tensor tensor(int n, int q) { return random_tensor(n, q, rng); }
  Vector vector(int n) { return random_vector(n, rng); }
  std::vector<Vector> args(int n, int q) {
    std::vector<Vector> a;
    for (int k = 0; k < q; ++k) a.push_back(vector(n));
    return a;
  }
};

// Frame with m random orthonormal normals in R^n.
GeometryFrame random_frame(int n, int m, std::mt19937_64& rng) {
  std::vector<Vector> grads;
  for (int i = 0; i < m; ++i) grads.push_back(random_vector(n, rng));
  return frame_from_gradients(Vector(n, 0.0), 0.0, std::move(grads));
}

}  // namespace

void algebra(Context& ctx) {
  const double tight = 1e-12;

  ctx.check("algebra.evaluate_leaves", "T(e_i1, .., e_iq) = leaf (i1..iq)", 1e-15,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::abs);
              for (int k = 0; k < kInstances / 10; ++k) {
                const int n = d.dim(), q = d.rank(0, 4);
                const Tensor t = d.tensor(n, q);
                for (std::size_t flat = 0; flat < t.size(); ++flat) {
                  std::vector<Vector> args(q);
                  std::size_t rest = flat;
                  for (int s = q - 1; s >= 0; --s) {
                    args[s] = unit_vector(n, static_cast<int>(rest % n));
                    rest /= n;
                  }
                  w.add(compare(t.evaluate(args), t[flat], Metric::abs));
                }
              }
              return w.result();
            });

  ctx.check("algebra.evaluate_oracle", "recursive evaluation equals the sum over index tuples", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), q = d.rank(0, 4);
                const Tensor t = d.tensor(n, q);
                const auto args = d.args(n, q);
                w.add(compare(t.evaluate(args), brute_evaluate(t, args), Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.multilinearity", "T(.., a v + b w, ..) = a T(.., v, ..) + b T(.., w, ..)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              std::uniform_real_distribution<double> coeff(-2.0, 2.0);
              for (int k = 0; k < kInstances / 10; ++k) {
                const int n = d.dim(), q = d.rank(1, 4);
                const Tensor t = d.tensor(n, q);
                auto args = d.args(n, q);
                const int slot = d.rank(0, q - 1);
                const double a = coeff(rng), b = coeff(rng);
                const Vector v = d.vector(n), u = d.vector(n);
                args[slot] = axpy(a, v, scaled(b, u));
                const double mixed = t.evaluate(args);
                args[slot] = v;
                const double ev = t.evaluate(args);
                args[slot] = u;
                const double eu = t.evaluate(args);
                w.add(compare(mixed, a * ev + b * eu, Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.row_component", "T^k(v_2, .., v_q) = T(e_k, v_2, .., v_q)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), q = d.rank(1, 4);
                const Tensor t = d.tensor(n, q);
                const int row = d.rank(0, n - 1);
                auto args = d.args(n, q);
                args[0] = unit_vector(n, row);
                const std::vector<Vector> tail(args.begin() + 1, args.end());
                w.add(compare(t.row(row).evaluate(tail), brute_evaluate(t, args), Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.linear_combination", "(a T + b S)(v..) = a T(v..) + b S(v..)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              std::uniform_real_distribution<double> coeff(-2.0, 2.0);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), q = d.rank(0, 4);
                const Tensor t = d.tensor(n, q), s = d.tensor(n, q);
                const double a = coeff(rng), b = coeff(rng);
                const auto args = d.args(n, q);
                w.add(compare(linear_combine(a, t, b, s).evaluate(args),
                              a * brute_evaluate(t, args) + b * brute_evaluate(s, args), Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.outer_factorization", "(S (x) T)(v.., w..) = S(v..) T(w..)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), s = d.rank(0, 2), q = d.rank(0, 2);
                const Tensor a = d.tensor(n, s), b = d.tensor(n, q);
                const auto va = d.args(n, s), vb = d.args(n, q);
                std::vector<Vector> all = va;
                all.insert(all.end(), vb.begin(), vb.end());
                w.add(compare(outer(a, b).evaluate(all), brute_evaluate(a, va) * brute_evaluate(b, vb),
                              Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.frobenius_outer", "(a (x) b) . (c (x) d) = (a . c)(b . d) and S . T = T . S", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim();
                const Tensor a = d.tensor(n, 1), b = d.tensor(n, 1), c = d.tensor(n, 1), e = d.tensor(n, 1);
                w.add(compare(frobenius(outer(a, b), outer(c, e)), frobenius(a, c) * frobenius(b, e),
                              Metric::rel));
                const int q = d.rank(0, 4);
                const Tensor s = d.tensor(n, q), t = d.tensor(n, q);
                w.add(compare(frobenius(s, t), frobenius(t, s), Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.insertion_commutation", "(T(u)) . v = (T . v)(u)", tight, [](std::mt19937_64& rng) {
    Draw d{rng};
    Worst w(Metric::rel);
    for (int k = 0; k < kInstances; ++k) {
      const int n = d.dim(), q = d.rank(2, 4);
      const Tensor t = d.tensor(n, q);
      const Vector u = d.vector(n), v = d.vector(n);
      w.add(compare(insert_right(insert_left(t, u), v), insert_left(insert_right(t, v), u), Metric::rel));
    }
    return w.result();
  });

  ctx.check("algebra.insertion_oracle", "T(v)(w..) = T(v, w..) and (T . v)(w..) = T(w.., v)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), q = d.rank(1, 4);
                const Tensor t = d.tensor(n, q);
                auto args = d.args(n, q);
                const double full = brute_evaluate(t, args);
                const std::vector<Vector> tail(args.begin() + 1, args.end());
                const std::vector<Vector> head(args.begin(), args.end() - 1);
                w.add(compare(insert_left(t, args.front()).evaluate(tail), full, Metric::rel));
                w.add(compare(insert_right(t, args.back()).evaluate(head), full, Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.contraction_associativity", "(S:T) . v = S:(T . v)", tight, [](std::mt19937_64& rng) {
    Draw d{rng};
    Worst w(Metric::rel);
    for (int k = 0; k < kInstances; ++k) {
      const int n = d.dim(), q = d.rank(2, 4), s = d.rank(0, q - 1);
      const Tensor sa = d.tensor(n, s), t = d.tensor(n, q);
      const Vector v = d.vector(n);
      w.add(compare(insert_right(contract_left(sa, t), v), contract_left(sa, insert_right(t, v)), Metric::rel));
    }
    return w.result();
  });

  ctx.check("algebra.contraction_equal_rank", "S:T = T:S = S . T for equal ranks", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim(), q = d.rank(0, 4);
                const Tensor s = d.tensor(n, q), t = d.tensor(n, q);
                w.add(compare(contract_left(s, t).value(), frobenius(s, t), Metric::rel));
                w.add(compare(contract_right(t, s).value(), frobenius(s, t), Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.contraction_oracle", "(S:T)(w..) = sum S(e..) T(e.., w..)", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances / 10; ++k) {
                const int n = d.dim(), q = d.rank(1, 4), s = d.rank(1, q);
                const Tensor sa = d.tensor(n, s), t = d.tensor(n, q);
                const auto tail = d.args(n, q - s);
                double expect = 0.0;
                for (std::size_t flat = 0; flat < sa.size(); ++flat) {
                  std::vector<Vector> args(s);
                  std::size_t rest = flat;
                  for (int a = s - 1; a >= 0; --a) {
                    args[a] = unit_vector(n, static_cast<int>(rest % n));
                    rest /= n;
                  }
                  args.insert(args.end(), tail.begin(), tail.end());
                  expect += sa[flat] * brute_evaluate(t, args);
                }
                w.add(compare(contract_left(sa, t).evaluate(tail), expect, Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.bigcirc_associativity", "(T o S) o R = T o (S o R)", tight, [](std::mt19937_64& rng) {
    Draw d{rng};
    Worst w(Metric::rel);
    for (int k = 0; k < kInstances; ++k) {
      const int n = d.dim();
      // A rank-1 middle factor breaks associativity, so s >= 2.
      const int q = d.rank(1, 3), s = d.rank(2, 3), r = d.rank(1, 2);
      const Tensor t = d.tensor(n, q), sa = d.tensor(n, s), ra = d.tensor(n, r);
      w.add(compare(bigcirc(bigcirc(t, sa), ra), bigcirc(t, bigcirc(sa, ra)), Metric::rel));
    }
    return w.result();
  });

  ctx.check("algebra.bigcirc_matrix", "rank-2 bigcirc is the matrix product", 1e-15, [](std::mt19937_64&) {
    const Tensor a(2, 2, {1, 2, 3, 4}), b(2, 2, {5, 6, 7, 8});
    return compare(bigcirc(a, b), Tensor(2, 2, {19, 22, 43, 50}), Metric::abs);
  });

  ctx.check("algebra.transpose", "transpose(T) . v = T(v) and transpose twice is the identity", tight,
            [](std::mt19937_64& rng) {
              Draw d{rng};
              Worst w(Metric::rel);
              for (int k = 0; k < kInstances; ++k) {
                const int n = d.dim();
                const Tensor t = d.tensor(n, 2);
                const Vector v = d.vector(n);
                w.add(compare(insert_right(transpose2(t), v), insert_left(t, v), Metric::rel));
                w.add(compare(transpose2(transpose2(t)), t, Metric::rel));
              }
              return w.result();
            });

  ctx.check("algebra.frobenius_projection", "S . T = S . P(T) for tangent S", tight, [](std::mt19937_64& rng) {
    Draw d{rng};
    Worst w(Metric::rel);
    for (int k = 0; k < kInstances; ++k) {
      const int n = std::uniform_int_distribution<int>(2, 4)(rng);
      const int m = d.rank(1, n - 1);
      const int q = d.rank(1, 4);
      const GeometryFrame frame = random_frame(n, m, rng);
      const Tensor s = project(frame, d.tensor(n, q));
      const Tensor t = d.tensor(n, q);
      w.add(compare(frobenius(s, t), frobenius(s, project(frame, t)), Metric::rel));
    }
    return w.result();
  });
}

}  // namespace xtc::suites
