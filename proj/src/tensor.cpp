#include "xtc/tensor.hpp"

#include <cmath>
#include <numeric>

namespace xtc {
namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void check_shape(int dim, int rank) {
  if (dim < 1 || dim > kMaxDim)
    throw ShapeError("ambient dimension " + std::to_string(dim) + " outside [1, 8]");
  if (rank < 0 || rank > kMaxRank)
    throw ShapeError("rank " + std::to_string(rank) + " outside [0, 8]");
  if (ipow(dim, rank) > kMaxLeaves) throw ShapeError("leaf count exceeds 2^24");
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rank() != b.rank() || (a.rank() > 0 && a.dim() != b.dim()))
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape().str() + " vs " +
                     b.shape().str());
}

void require_vector(const Tensor& t, std::span<const double> v, const char* op) {
  if (t.rank() < 1) throw ShapeError(std::string(op) + ": rank-0 tensor has no slot");
  if (static_cast<int>(v.size()) != t.dim())
    throw ShapeError(std::string(op) + ": vector length " + std::to_string(v.size()) +
                     " vs dimension " + std::to_string(t.dim()));
}

}  // namespace

std::size_t TensorShape::leaf_count() const { return ipow(dim, rank); }

std::string TensorShape::str() const {
  return "(n=" + std::to_string(dim) + ", q=" + std::to_string(rank) + ")";
}

Tensor::Tensor() : data_(1, 0.0) {}

Tensor::Tensor(int dim, int rank) : dim_(dim), rank_(rank) {
  check_shape(dim, rank);
  data_.assign(ipow(dim, rank), 0.0);
}

Tensor::Tensor(int dim, int rank, std::vector<double> leaves)
    : dim_(dim), rank_(rank), data_(std::move(leaves)) {
  check_shape(dim, rank);
  if (data_.size() != ipow(dim, rank))
    throw ShapeError("leaf vector has " + std::to_string(data_.size()) + " entries, shape " +
                     shape().str() + " needs " + std::to_string(ipow(dim, rank)));
}

Tensor Tensor::scalar(double value, int dim) { return Tensor(dim, 0, {value}); }

Tensor Tensor::covector(std::span<const double> components) {
  return Tensor(static_cast<int>(components.size()), 1,
                std::vector<double>(components.begin(), components.end()));
}

Tensor Tensor::covector(std::initializer_list<double> components) {
  return covector(std::span<const double>(components.begin(), components.size()));
}

Tensor Tensor::basis_covector(int dim, int k) {
  Tensor t(dim, 1);
  if (k < 0 || k >= dim) throw ShapeError("basis index out of range");
  t.data_[k] = 1.0;
  return t;
}

Tensor Tensor::identity(int dim) {
  Tensor t(dim, 2);
  for (int i = 0; i < dim; ++i) t.data_[i * dim + i] = 1.0;
  return t;
}

Tensor Tensor::from_rows(std::span<const Tensor> rows) {
  if (rows.empty()) throw ShapeError("from_rows: no rows");
  const int n = static_cast<int>(rows.size());
  const int q = rows[0].rank() + 1;
  Tensor t(n, q);
  const std::size_t block = ipow(n, q - 1);
  for (int k = 0; k < n; ++k) {
    if (rows[k].rank() != q - 1 || (q > 1 && rows[k].dim() != n))
      throw ShapeError("from_rows: row " + std::to_string(k) + " has shape " + rows[k].shape().str());
    std::copy(rows[k].data_.begin(), rows[k].data_.end(), t.data_.begin() + k * block);
  }
  return t;
}

double Tensor::value() const {
  if (rank_ != 0) throw ShapeError("value(): tensor is not a scalar");
  return data_[0];
}

std::size_t Tensor::flat_index(std::initializer_list<int> index) const {
  if (static_cast<int>(index.size()) != rank_) throw ShapeError("index length does not match rank");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw ShapeError("index out of range");
    flat = flat * dim_ + i;
  }
  return flat;
}

double Tensor::at(std::initializer_list<int> index) const { return data_[flat_index(index)]; }
double& Tensor::at(std::initializer_list<int> index) { return data_[flat_index(index)]; }

Tensor Tensor::row(int k) const {
  if (rank_ < 1) throw ShapeError("row(): rank-0 tensor has no rows");
  if (k < 0 || k >= dim_) throw ShapeError("row(): index out of range");
  const std::size_t block = ipow(dim_, rank_ - 1);
  return Tensor(dim_, rank_ - 1,
                std::vector<double>(data_.begin() + k * block, data_.begin() + (k + 1) * block));
}

void Tensor::set_row(int k, const Tensor& row) {
  if (rank_ < 1 || row.rank() != rank_ - 1 || (row.rank() > 0 && row.dim() != dim_))
    throw ShapeError("set_row(): shape mismatch");
  const std::size_t block = ipow(dim_, rank_ - 1);
  std::copy(row.data_.begin(), row.data_.end(), data_.begin() + k * block);
}

double Tensor::evaluate(std::span<const Vector> args) const {
  if (static_cast<int>(args.size()) != rank_)
    throw ShapeError("evaluate(): expected " + std::to_string(rank_) + " arguments");
  Tensor t = *this;
  for (const auto& v : args) t = insert_left(t, v);
  return t.value();
}

Tensor& Tensor::operator+=(const Tensor& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator-(Tensor a) { return a *= -1.0; }
Tensor operator*(double s, Tensor a) { return a *= s; }
Tensor operator*(Tensor a, double s) { return a *= s; }

Tensor linear_combine(double a, const Tensor& t, double b, const Tensor& s) {
  require_same_shape(t, s, "linear_combine");
  Tensor r = t;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a * t[i] + b * s[i];
  return r;
}

double frobenius(const Tensor& t, const Tensor& s) {
  require_same_shape(t, s, "frobenius");
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) acc += t[i] * s[i];
  return acc;
}

double norm(const Tensor& t) { return std::sqrt(frobenius(t, t)); }

double max_abs(const Tensor& t) {
  double m = 0.0;
  for (double x : t.leaves()) m = std::max(m, std::abs(x));
  return m;
}

int common_dim(const Tensor& a, const Tensor& b) {
  if (a.rank() == 0) return b.dim();
  if (b.rank() == 0) return a.dim();
  if (a.dim() != b.dim())
    throw ShapeError("dimension mismatch " + a.shape().str() + " vs " + b.shape().str());
  return a.dim();
}

Tensor outer(const Tensor& s, const Tensor& t) {
  const int n = common_dim(s, t);
  Tensor r(n, s.rank() + t.rank());
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) r[k++] = s[i] * t[j];
  return r;
}

Tensor insert_left(const Tensor& t, std::span<const double> v) {
  require_vector(t, v, "insert_left");
  const int n = t.dim();
  Tensor r(n, t.rank() - 1);
  const std::size_t block = r.size();
  for (int k = 0; k < n; ++k)
    for (std::size_t j = 0; j < block; ++j) r[j] += v[k] * t[k * block + j];
  return r;
}

Tensor insert_right(const Tensor& t, std::span<const double> v) {
  require_vector(t, v, "insert_right");
  const int n = t.dim();
  Tensor r(n, t.rank() - 1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += t[i * n + k] * v[k];
    r[i] = acc;
  }
  return r;
}

Tensor contract_left(const Tensor& s, const Tensor& t) {
  if (s.rank() > t.rank())
    throw ShapeError("contract_left: rank " + std::to_string(s.rank()) + " exceeds " +
                     std::to_string(t.rank()));
  if (s.rank() == 0) return s.value() * t;
  const int n = common_dim(s, t);
  Tensor r(n, t.rank() - s.rank());
  const std::size_t block = r.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double si = s[i];
    if (si == 0.0) continue;
    for (std::size_t j = 0; j < block; ++j) r[j] += si * t[i * block + j];
  }
  return r;
}

Tensor contract_right(const Tensor& t, const Tensor& s) {
  if (s.rank() > t.rank())
    throw ShapeError("contract_right: rank " + std::to_string(s.rank()) + " exceeds " +
                     std::to_string(t.rank()));
  if (s.rank() == 0) return s.value() * t;
  const int n = common_dim(s, t);
  Tensor r(n, t.rank() - s.rank());
  const std::size_t block = s.size();
  for (std::size_t i = 0; i < r.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < block; ++j) acc += t[i * block + j] * s[j];
    r[i] = acc;
  }
  return r;
}

Tensor bigcirc(const Tensor& t, const Tensor& s) {
  if (t.rank() < 1 || s.rank() < 1)
    throw ShapeError("bigcirc: both operands need rank >= 1");
  const int n = common_dim(t, s);
  Tensor r(n, t.rank() + s.rank() - 2);
  const std::size_t rows = t.size() / n;
  const std::size_t cols = s.size() / n;
  for (std::size_t i = 0; i < rows; ++i)
    for (int a = 0; a < n; ++a) {
      const double tia = t[i * n + a];
      if (tia == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i * cols + j] += tia * s[a * cols + j];
    }
  return r;
}

Tensor transpose2(const Tensor& t) {
  if (t.rank() != 2) throw ShapeError("transpose2: rank-2 tensor required");
  const int n = t.dim();
  Tensor r(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r[a * n + b] = t[b * n + a];
  return r;
}

Tensor stack_last(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("stack_last: no parts");
  const int n = static_cast<int>(parts.size());
  const int q = parts[0].rank();
  Tensor r(n, q + 1);
  for (int c = 0; c < n; ++c) {
    if (parts[c].rank() != q || (q > 0 && parts[c].dim() != n))
      throw ShapeError("stack_last: inconsistent part shapes");
    for (std::size_t i = 0; i < parts[c].size(); ++i) r[i * n + c] = parts[c][i];
  }
  return r;
}

Tensor slice_last(const Tensor& t, int c) {
  if (t.rank() < 1) throw ShapeError("slice_last: rank-0 tensor");
  const int n = t.dim();
  Tensor r(n, t.rank() - 1);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = t[i * n + c];
  return r;
}

Tensor trace_last_two(const Tensor& t) {
  if (t.rank() < 2) throw ShapeError("trace_last_two: rank >= 2 required");
  const int n = t.dim();
  Tensor r(n, t.rank() - 2);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) acc += t[i * nn + a * n + a];
    r[i] = acc;
  }
  return r;
}

Tensor map_slot(const Tensor& t, int slot, const Tensor& a) {
  if (a.rank() != 2) throw ShapeError("map_slot: matrix must be rank 2");
  if (slot < 0 || slot >= t.rank()) throw ShapeError("map_slot: slot out of range");
  const int n = common_dim(t, a);
  const std::size_t inner = ipow(n, t.rank() - slot - 1);
  const std::size_t outer_count = ipow(n, slot);
  Tensor r(n, t.rank());
  for (std::size_t o = 0; o < outer_count; ++o)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double aij = a[i * n + j];
        if (aij == 0.0) continue;
        const std::size_t src = (o * n + i) * inner;
        const std::size_t dst = (o * n + j) * inner;
        for (std::size_t k = 0; k < inner; ++k) r[dst + k] += aij * t[src + k];
      }
  return r;
}

Tensor move_slot_to_last(const Tensor& t, int slot) {
  if (slot < 0 || slot >= t.rank()) throw ShapeError("move_slot_to_last: slot out of range");
  const int n = t.dim();
  const std::size_t inner = ipow(n, t.rank() - slot - 1);
  const std::size_t outer_count = ipow(n, slot);
  Tensor r(n, t.rank());
  for (std::size_t o = 0; o < outer_count; ++o)
    for (int i = 0; i < n; ++i)
      for (std::size_t k = 0; k < inner; ++k) r[(o * inner + k) * n + i] = t[(o * n + i) * inner + k];
  return r;
}

Tensor contract_gradient_pair(const Tensor& t, const Tensor& grad_s) {
  const int s = grad_s.rank() - 1;
  if (s < 0 || grad_s.rank() > t.rank())
    throw ShapeError("contract_gradient_pair: incompatible ranks");
  const int n = common_dim(t, grad_s);
  const int mid = t.rank() - s - 1;
  Tensor r(n, mid);
  const std::size_t lead = ipow(n, s);
  const std::size_t mids = ipow(n, mid);
  for (std::size_t i = 0; i < lead; ++i)
    for (std::size_t j = 0; j < mids; ++j) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += t[(i * mids + j) * n + a] * grad_s[i * n + a];
      r[j] += acc;
    }
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector axpy(double a, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("axpy: length mismatch");
  Vector r(y.begin(), y.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * x[i];
  return r;
}

Vector scaled(double a, std::span<const double> x) {
  Vector r(x.begin(), x.end());
  for (double& v : r) v *= a;
  return r;
}

Vector unit_vector(int dim, int k) {
  Vector e(dim, 0.0);
  e.at(k) = 1.0;
  return e;
}

}  // namespace xtc
