#include "xtc/polynomial.hpp"

#include <cmath>

namespace xtc {

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p(dim);
  if (c != 0.0) p.terms_.push_back({c, {}});
  return p;
}

Polynomial Polynomial::variable(int dim, int var) {
  Polynomial p(dim);
  Term term{1.0, {}};
  term.powers[var] = 1;
  p.terms_.push_back(term);
  return p;
}

void Polynomial::add_term(double coeff, std::span<const int> powers) {
  if (static_cast<int>(powers.size()) > dim_ + 1) throw ShapeError("add_term: too many powers");
  Term term{coeff, {}};
  for (std::size_t i = 0; i < powers.size(); ++i) term.powers[i] = static_cast<std::uint8_t>(powers[i]);
  for (auto& existing : terms_)
    if (existing.powers == term.powers) {
      existing.coeff += coeff;
      return;
    }
  terms_.push_back(term);
}

double Polynomial::operator()(std::span<const double> x, double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) {
    double m = term.coeff;
    for (int v = 0; v <= dim_; ++v) {
      const double base = v < dim_ ? x[v] : t;
      for (int k = 0; k < term.powers[v]; ++k) m *= base;
    }
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(dim_);
  for (const auto& term : terms_) {
    if (term.powers[var] == 0) continue;
    Term t = term;
    t.coeff *= term.powers[var];
    t.powers[var] -= 1;
    d.terms_.push_back(t);
  }
  return d;
}

Tensor PolynomialTensor::operator()(std::span<const double> x, double t) const {
  Tensor r(shape.dim, shape.rank);
  for (std::size_t i = 0; i < leaves.size(); ++i) r[i] = leaves[i](x, t);
  return r;
}

PolynomialTensor PolynomialTensor::gradient() const {
  const int n = shape.dim;
  PolynomialTensor g{{n, shape.rank + 1}, {}};
  g.leaves.reserve(leaves.size() * n);
  for (const auto& leaf : leaves)
    for (int c = 0; c < n; ++c) g.leaves.push_back(leaf.derivative(c));
  return g;
}

PolynomialTensor PolynomialTensor::time_derivative() const {
  PolynomialTensor d{shape, {}};
  d.leaves.reserve(leaves.size());
  for (const auto& leaf : leaves) d.leaves.push_back(leaf.derivative(shape.dim));
  return d;
}

TensorField polynomial_field(const PolynomialTensor& p, std::string label) {
  TensorField f(p.shape, [p](std::span<const double> x, double t) { return p(x, t); }, label);
  return f.with_gradient([p, label] { return polynomial_field(p.gradient(), "grad " + label); })
      .with_time_derivative([p, label] { return polynomial_field(p.time_derivative(), "dt " + label); });
}

PolynomialTensor random_polynomial_tensor(int dim, int rank, int degree, std::mt19937_64& rng,
                                          int time_degree) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  PolynomialTensor p{{dim, rank}, {}};
  const std::size_t count = p.shape.leaf_count();
  // Enumerate exponent vectors with total x-degree <= degree.
  std::vector<std::vector<int>> monomials;
  std::vector<int> powers(dim + 1, 0);
  auto recurse = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim) {
      for (int tp = 0; tp <= time_degree; ++tp) {
        powers[dim] = tp;
        monomials.push_back(powers);
      }
      powers[dim] = 0;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      powers[var] = k;
      self(self, var + 1, remaining - k);
    }
    powers[var] = 0;
  };
  recurse(recurse, 0, degree);
  for (std::size_t i = 0; i < count; ++i) {
    Polynomial leaf(dim);
    for (const auto& m : monomials) leaf.add_term(coeff(rng), m);
    p.leaves.push_back(std::move(leaf));
  }
  return p;
}

}  // namespace xtc
