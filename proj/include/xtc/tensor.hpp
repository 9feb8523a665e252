#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xtc {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxRank = 8;
inline constexpr std::size_t kMaxLeaves = std::size_t{1} << 24;

using Vector = std::vector<double>;

// Raised for any rank or dimension mismatch; thrown before work starts.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TensorShape {
  int dim = 1;
  int rank = 0;

  std::size_t leaf_count() const;
  bool operator==(const TensorShape&) const = default;
  std::string str() const;
};

// Rank-q tensor over R^n stored as the leaves of a complete n-ary tree of
// depth q in lexicographic order. Row k of a rank-q tensor is the rank-(q-1)
// subtree under branch k.
class Tensor {
 public:
  Tensor();
  Tensor(int dim, int rank);
  Tensor(int dim, int rank, std::vector<double> leaves);

  static Tensor zeros(int dim, int rank) { return Tensor(dim, rank); }
  static Tensor scalar(double value, int dim = 1);
  static Tensor covector(std::span<const double> components);
  static Tensor covector(std::initializer_list<double> components);
  static Tensor basis_covector(int dim, int k);
  static Tensor identity(int dim);
  static Tensor from_rows(std::span<const Tensor> rows);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  TensorShape shape() const { return {dim_, rank_}; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> leaves() const { return data_; }
  std::span<double> leaves() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double value() const;
  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }
  double at(std::initializer_list<int> index) const;
  double& at(std::initializer_list<int> index);

  Tensor row(int k) const;
  void set_row(int k, const Tensor& row);

  // T(v_1, ..., v_q).
  double evaluate(std::span<const Vector> args) const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double s);

 private:
  std::size_t flat_index(std::initializer_list<int> index) const;

  int dim_ = 1;
  int rank_ = 0;
  std::vector<double> data_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator-(Tensor a);
Tensor operator*(double s, Tensor a);
Tensor operator*(Tensor a, double s);

Tensor linear_combine(double a, const Tensor& t, double b, const Tensor& s);

double frobenius(const Tensor& t, const Tensor& s);
double norm(const Tensor& t);
double max_abs(const Tensor& t);

Tensor outer(const Tensor& s, const Tensor& t);
Tensor insert_left(const Tensor& t, std::span<const double> v);
Tensor insert_right(const Tensor& t, std::span<const double> v);
Tensor contract_left(const Tensor& s, const Tensor& t);
Tensor contract_right(const Tensor& t, const Tensor& s);
Tensor bigcirc(const Tensor& t, const Tensor& s);
Tensor transpose2(const Tensor& t);

// Tensor of rank r+1 whose contraction of the last slot with e_c is parts[c].
Tensor stack_last(std::span<const Tensor> parts);
// Leaf slice obtained by fixing the last slot to c.
Tensor slice_last(const Tensor& t, int c);
// Trace over the two deepest slots.
Tensor trace_last_two(const Tensor& t);
// Replaces slot k by its image under the matrix a: result(.., e_j, ..) =
// t(.., a e_j, ..), with a stored as a rank-2 tensor a[i][j].
Tensor map_slot(const Tensor& t, int slot, const Tensor& a);
// Moves slot k to the deepest position, keeping the order of the others.
Tensor move_slot_to_last(const Tensor& t, int slot);

// Sum over matching leading slots of t and grad_s (first rank(s) slots) and
// over the deepest slots of both; grad_s has rank(s)+1 <= rank(t).
Tensor contract_gradient_pair(const Tensor& t, const Tensor& grad_s);

// Common ambient dimension; rank-0 operands adapt to the other operand.
int common_dim(const Tensor& a, const Tensor& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vector axpy(double a, std::span<const double> x, std::span<const double> y);
Vector scaled(double a, std::span<const double> x);
Vector unit_vector(int dim, int k);

}  // namespace xtc
