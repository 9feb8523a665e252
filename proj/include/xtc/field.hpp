#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "xtc/tensor.hpp"

namespace xtc {

using Point = Vector;

// Ambient tensor field x, t -> T(x, t). Optional analytic gradient and time
// derivative are supplied lazily as further fields, so a field may carry an
// arbitrarily deep tower of exact derivatives. fd_depth counts how many
// finite-difference derivatives are already folded into the evaluator.
class TensorField {
 public:
  using Evaluator = std::function<Tensor(std::span<const double> x, double t)>;
  using Factory = std::function<TensorField()>;
  using Domain = std::function<bool(std::span<const double> x, double t)>;

  TensorField() = default;
  TensorField(TensorShape shape, Evaluator eval, std::string label = {});

  Tensor operator()(std::span<const double> x, double t = 0.0) const;

  TensorShape shape() const { return impl_->shape; }
  int dim() const { return impl_->shape.dim; }
  int rank() const { return impl_->shape.rank; }
  const std::string& label() const { return impl_->label; }
  int fd_depth() const { return impl_->fd_depth; }
  bool valid() const { return static_cast<bool>(impl_); }

  bool has_gradient() const { return static_cast<bool>(impl_->gradient); }
  bool has_time_derivative() const { return static_cast<bool>(impl_->time_derivative); }
  // Analytic gradient field (rank + 1, derivative slot last).
  const TensorField& gradient() const;
  const TensorField& time_derivative() const;

  bool contains(std::span<const double> x, double t) const;
  const Domain& domain() const { return impl_->domain; }

  TensorField with_gradient(Factory f) const;
  TensorField with_time_derivative(Factory f) const;
  TensorField with_domain(Domain d) const;
  TensorField with_depth(int depth) const;
  TensorField with_label(std::string label) const;

 private:
  struct Impl {
    TensorShape shape;
    Evaluator eval;
    std::string label;
    Factory gradient;
    Factory time_derivative;
    Domain domain;
    int fd_depth = 0;
    mutable std::shared_ptr<TensorField> gradient_cache;
    mutable std::shared_ptr<TensorField> time_cache;
  };
  std::shared_ptr<Impl> clone() const;

  std::shared_ptr<const Impl> impl_;
};

using LinearOp = std::function<Tensor(const Tensor&)>;
using BilinearOp = std::function<Tensor(const Tensor&, const Tensor&)>;

TensorField constant_field(const Tensor& value, int dim);
TensorField position_field(int dim);
TensorField sum_field(const TensorField& a, const TensorField& b);
TensorField difference_field(const TensorField& a, const TensorField& b);
TensorField scaled_field(double s, const TensorField& a);
// Field L(A(x)) for a linear map L; exact derivatives follow A's.
TensorField linear_field(LinearOp op, const TensorField& a, TensorShape out, std::string label = {});
// Field B(A(x), C(x)) for a bilinear map B; derivatives follow the product rule.
TensorField bilinear_field(BilinearOp op, const TensorField& a, const TensorField& b,
                           TensorShape out, std::string label = {});

TensorField outer_field(const TensorField& a, const TensorField& b);
TensorField bigcirc_field(const TensorField& a, const TensorField& b);
TensorField insert_right_field(const TensorField& t, const TensorField& v);
TensorField insert_left_field(const TensorField& t, const TensorField& v);
TensorField contract_left_field(const TensorField& s, const TensorField& t);
TensorField contract_right_field(const TensorField& t, const TensorField& s);
TensorField frobenius_field(const TensorField& a, const TensorField& b);
TensorField transpose_field(const TensorField& a);
TensorField trace_last_two_field(const TensorField& a);
TensorField map_slot_field(const TensorField& t, int slot, const TensorField& a);
TensorField move_slot_to_last_field(const TensorField& t, int slot);
TensorField row_field(const TensorField& t, int k);

TensorField::Domain intersect_domains(const TensorField::Domain& a, const TensorField::Domain& b);

}  // namespace xtc
