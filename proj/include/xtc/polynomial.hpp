#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "xtc/field.hpp"

namespace xtc {

// Polynomial in x_0..x_{n-1} and t; the time variable has index n.
class Polynomial {
 public:
  struct Term {
    double coeff = 0.0;
    std::array<std::uint8_t, kMaxDim + 1> powers{};
  };

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, double c);
  static Polynomial variable(int dim, int var);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  void add_term(double coeff, std::span<const int> powers);

  double operator()(std::span<const double> x, double t) const;
  Polynomial derivative(int var) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  int dim_ = 1;
  std::vector<Term> terms_;
};

// Tensor whose leaves are polynomials.
struct PolynomialTensor {
  TensorShape shape;
  std::vector<Polynomial> leaves;

  Tensor operator()(std::span<const double> x, double t) const;
  PolynomialTensor gradient() const;
  PolynomialTensor time_derivative() const;
};

// Field with exact derivatives of every order.
TensorField polynomial_field(const PolynomialTensor& p, std::string label = "polynomial");

// Random polynomial tensor of total degree <= degree in x (and, if
// time_degree > 0, of degree <= time_degree in t) with coefficients in [-1, 1].
PolynomialTensor random_polynomial_tensor(int dim, int rank, int degree, std::mt19937_64& rng,
                                          int time_degree = 0);

}  // namespace xtc
