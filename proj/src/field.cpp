#include "xtc/field.hpp"

#include <cmath>
#include <cstdio>

#include "xtc/errors.hpp"

namespace xtc {

std::string format_point(std::span<const double> x, double t) {
  std::string s = "x=(";
  char buf[40];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", x[i]);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "), t=%.17g", t);
  return s + buf;
}

TensorField::TensorField(TensorShape shape, Evaluator eval, std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->shape = shape;
  impl->eval = std::move(eval);
  impl->label = std::move(label);
  impl_ = std::move(impl);
}

Tensor TensorField::operator()(std::span<const double> x, double t) const {
  if (static_cast<int>(x.size()) != impl_->shape.dim)
    throw ShapeError("field " + impl_->label + ": point has " + std::to_string(x.size()) +
                     " coordinates, expected " + std::to_string(impl_->shape.dim));
  Tensor v = impl_->eval(x, t);
  if (v.rank() != impl_->shape.rank || (v.rank() > 0 && v.dim() != impl_->shape.dim))
    throw ShapeError("field " + impl_->label + ": evaluator returned " + v.shape().str() +
                     ", declared " + impl_->shape.str());
  for (double leaf : v.leaves())
    if (!std::isfinite(leaf))
      throw NumericalError("field " + impl_->label + ": non-finite value at " + format_point(x, t));
  return v;
}

const TensorField& TensorField::gradient() const {
  if (!impl_->gradient) throw NumericalError("field " + impl_->label + " has no analytic gradient");
  if (!impl_->gradient_cache) impl_->gradient_cache = std::make_shared<TensorField>(impl_->gradient());
  return *impl_->gradient_cache;
}

const TensorField& TensorField::time_derivative() const {
  if (!impl_->time_derivative)
    throw NumericalError("field " + impl_->label + " has no analytic time derivative");
  if (!impl_->time_cache)
    impl_->time_cache = std::make_shared<TensorField>(impl_->time_derivative());
  return *impl_->time_cache;
}

bool TensorField::contains(std::span<const double> x, double t) const {
  return !impl_->domain || impl_->domain(x, t);
}

std::shared_ptr<TensorField::Impl> TensorField::clone() const {
  auto impl = std::make_shared<Impl>();
  impl->shape = impl_->shape;
  impl->eval = impl_->eval;
  impl->label = impl_->label;
  impl->gradient = impl_->gradient;
  impl->time_derivative = impl_->time_derivative;
  impl->domain = impl_->domain;
  impl->fd_depth = impl_->fd_depth;
  return impl;
}

TensorField TensorField::with_gradient(Factory f) const {
  auto impl = clone();
  impl->gradient = std::move(f);
  TensorField r;
  r.impl_ = std::move(impl);
  return r;
}

TensorField TensorField::with_time_derivative(Factory f) const {
  auto impl = clone();
  impl->time_derivative = std::move(f);
  TensorField r;
  r.impl_ = std::move(impl);
  return r;
}

TensorField TensorField::with_domain(Domain d) const {
  auto impl = clone();
  impl->domain = std::move(d);
  TensorField r;
  r.impl_ = std::move(impl);
  return r;
}

TensorField TensorField::with_depth(int depth) const {
  auto impl = clone();
  impl->fd_depth = depth;
  TensorField r;
  r.impl_ = std::move(impl);
  return r;
}

TensorField TensorField::with_label(std::string label) const {
  auto impl = clone();
  impl->label = std::move(label);
  TensorField r;
  r.impl_ = std::move(impl);
  return r;
}

TensorField::Domain intersect_domains(const TensorField::Domain& a, const TensorField::Domain& b) {
  if (!a) return b;
  if (!b) return a;
  return [a, b](std::span<const double> x, double t) { return a(x, t) && b(x, t); };
}

TensorField constant_field(const Tensor& value, int dim) {
  const int rank = value.rank();
  Tensor v = value;
  if (rank == 0) v = Tensor::scalar(value.value(), dim);
  TensorField f({dim, rank}, [v](std::span<const double>, double) { return v; }, "constant");
  auto zero = [dim, rank] { return constant_field(Tensor::zeros(dim, rank + 1), dim); };
  auto dt = [dim, rank] { return constant_field(Tensor::zeros(dim, rank), dim); };
  return f.with_gradient(zero).with_time_derivative(dt);
}

TensorField position_field(int dim) {
  TensorField f({dim, 1},
                [](std::span<const double> x, double) { return Tensor::covector(x); }, "position");
  return f.with_gradient([dim] { return constant_field(Tensor::identity(dim), dim); })
      .with_time_derivative([dim] { return constant_field(Tensor::zeros(dim, 1), dim); });
}

TensorField linear_field(LinearOp op, const TensorField& a, TensorShape out, std::string label) {
  TensorField f(out, [op, a](std::span<const double> x, double t) { return op(a(x, t)); }, label);
  f = f.with_domain(a.domain()).with_depth(a.fd_depth());
  if (a.has_gradient()) {
    f = f.with_gradient([op, a, out, label] {
      LinearOp lifted = [op](const Tensor& g) {
        std::vector<Tensor> parts;
        parts.reserve(g.dim());
        for (int c = 0; c < g.dim(); ++c) parts.push_back(op(slice_last(g, c)));
        return stack_last(parts);
      };
      return linear_field(lifted, a.gradient(), {out.dim, out.rank + 1}, "grad " + label);
    });
  }
  if (a.has_time_derivative()) {
    f = f.with_time_derivative(
        [op, a, out, label] { return linear_field(op, a.time_derivative(), out, "dt " + label); });
  }
  return f;
}

TensorField bilinear_field(BilinearOp op, const TensorField& a, const TensorField& b,
                           TensorShape out, std::string label) {
  TensorField f(out,
                [op, a, b](std::span<const double> x, double t) { return op(a(x, t), b(x, t)); },
                label);
  f = f.with_domain(intersect_domains(a.domain(), b.domain()))
          .with_depth(std::max(a.fd_depth(), b.fd_depth()));
  if (a.has_gradient() && b.has_gradient()) {
    f = f.with_gradient([op, a, b, out, label] {
      BilinearOp left = [op](const Tensor& g, const Tensor& v) {
        std::vector<Tensor> parts;
        parts.reserve(g.dim());
        for (int c = 0; c < g.dim(); ++c) parts.push_back(op(slice_last(g, c), v));
        return stack_last(parts);
      };
      BilinearOp right = [op](const Tensor& u, const Tensor& h) {
        std::vector<Tensor> parts;
        parts.reserve(h.dim());
        for (int c = 0; c < h.dim(); ++c) parts.push_back(op(u, slice_last(h, c)));
        return stack_last(parts);
      };
      const TensorShape g{out.dim, out.rank + 1};
      return sum_field(bilinear_field(left, a.gradient(), b, g, "grad " + label),
                       bilinear_field(right, a, b.gradient(), g, "grad " + label));
    });
  }
  if (a.has_time_derivative() && b.has_time_derivative()) {
    f = f.with_time_derivative([op, a, b, out, label] {
      return sum_field(bilinear_field(op, a.time_derivative(), b, out, "dt " + label),
                       bilinear_field(op, a, b.time_derivative(), out, "dt " + label));
    });
  }
  return f;
}

TensorField sum_field(const TensorField& a, const TensorField& b) {
  if (a.shape() != b.shape())
    throw ShapeError("sum_field: " + a.shape().str() + " vs " + b.shape().str());
  TensorField f(a.shape(),
                [a, b](std::span<const double> x, double t) { return a(x, t) + b(x, t); }, "sum");
  f = f.with_domain(intersect_domains(a.domain(), b.domain()))
          .with_depth(std::max(a.fd_depth(), b.fd_depth()));
  if (a.has_gradient() && b.has_gradient())
    f = f.with_gradient([a, b] { return sum_field(a.gradient(), b.gradient()); });
  if (a.has_time_derivative() && b.has_time_derivative())
    f = f.with_time_derivative([a, b] { return sum_field(a.time_derivative(), b.time_derivative()); });
  return f;
}

TensorField difference_field(const TensorField& a, const TensorField& b) {
  return sum_field(a, scaled_field(-1.0, b));
}

TensorField scaled_field(double s, const TensorField& a) {
  return linear_field([s](const Tensor& u) { return s * u; }, a, a.shape(), "scaled");
}

namespace {

void require_same_dim(const TensorField& a, const TensorField& b, const char* op) {
  if (a.dim() != b.dim())
    throw ShapeError(std::string(op) + ": field dimensions " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
}

}  // namespace

TensorField outer_field(const TensorField& a, const TensorField& b) {
  require_same_dim(a, b, "outer_field");
  return bilinear_field([](const Tensor& u, const Tensor& v) { return outer(u, v); }, a, b,
                        {a.dim(), a.rank() + b.rank()}, "outer");
}

TensorField bigcirc_field(const TensorField& a, const TensorField& b) {
  require_same_dim(a, b, "bigcirc_field");
  if (a.rank() < 1 || b.rank() < 1) throw ShapeError("bigcirc_field: ranks must be >= 1");
  return bilinear_field([](const Tensor& u, const Tensor& v) { return bigcirc(u, v); }, a, b,
                        {a.dim(), a.rank() + b.rank() - 2}, "bigcirc");
}

TensorField insert_right_field(const TensorField& t, const TensorField& v) {
  require_same_dim(t, v, "insert_right_field");
  if (v.rank() != 1 || t.rank() < 1) throw ShapeError("insert_right_field: rank mismatch");
  return bilinear_field([](const Tensor& u, const Tensor& w) { return insert_right(u, w.leaves()); },
                        t, v, {t.dim(), t.rank() - 1}, "insert_right");
}

TensorField insert_left_field(const TensorField& t, const TensorField& v) {
  require_same_dim(t, v, "insert_left_field");
  if (v.rank() != 1 || t.rank() < 1) throw ShapeError("insert_left_field: rank mismatch");
  return bilinear_field([](const Tensor& u, const Tensor& w) { return insert_left(u, w.leaves()); },
                        t, v, {t.dim(), t.rank() - 1}, "insert_left");
}

TensorField contract_left_field(const TensorField& s, const TensorField& t) {
  require_same_dim(s, t, "contract_left_field");
  if (s.rank() > t.rank()) throw ShapeError("contract_left_field: rank mismatch");
  return bilinear_field([](const Tensor& u, const Tensor& v) { return contract_left(u, v); }, s, t,
                        {t.dim(), t.rank() - s.rank()}, "contract_left");
}

TensorField contract_right_field(const TensorField& t, const TensorField& s) {
  require_same_dim(s, t, "contract_right_field");
  if (s.rank() > t.rank()) throw ShapeError("contract_right_field: rank mismatch");
  return bilinear_field([](const Tensor& u, const Tensor& v) { return contract_right(u, v); }, t, s,
                        {t.dim(), t.rank() - s.rank()}, "contract_right");
}

TensorField frobenius_field(const TensorField& a, const TensorField& b) {
  if (a.shape() != b.shape()) throw ShapeError("frobenius_field: shape mismatch");
  const int n = a.dim();
  return bilinear_field(
      [n](const Tensor& u, const Tensor& v) { return Tensor::scalar(frobenius(u, v), n); }, a, b,
      {n, 0}, "frobenius");
}

TensorField transpose_field(const TensorField& a) {
  if (a.rank() != 2) throw ShapeError("transpose_field: rank-2 field required");
  return linear_field([](const Tensor& u) { return transpose2(u); }, a, a.shape(), "transpose");
}

TensorField trace_last_two_field(const TensorField& a) {
  if (a.rank() < 2) throw ShapeError("trace_last_two_field: rank >= 2 required");
  const int n = a.dim();
  return linear_field(
      [n](const Tensor& u) {
        Tensor r = trace_last_two(u);
        return r.rank() == 0 ? Tensor::scalar(r.value(), n) : r;
      },
      a, {n, a.rank() - 2}, "trace");
}

TensorField map_slot_field(const TensorField& t, int slot, const TensorField& a) {
  require_same_dim(t, a, "map_slot_field");
  if (a.rank() != 2 || slot < 0 || slot >= t.rank()) throw ShapeError("map_slot_field: bad slot");
  return bilinear_field([slot](const Tensor& u, const Tensor& m) { return map_slot(u, slot, m); }, t,
                        a, t.shape(), "map_slot");
}

TensorField move_slot_to_last_field(const TensorField& t, int slot) {
  if (slot < 0 || slot >= t.rank()) throw ShapeError("move_slot_to_last_field: bad slot");
  return linear_field([slot](const Tensor& u) { return move_slot_to_last(u, slot); }, t, t.shape(),
                      "move_slot");
}

TensorField row_field(const TensorField& t, int k) {
  if (t.rank() < 1 || k < 0 || k >= t.dim()) throw ShapeError("row_field: bad row");
  const int n = t.dim();
  return linear_field(
      [k, n](const Tensor& u) {
        Tensor r = u.row(k);
        return r.rank() == 0 ? Tensor::scalar(r.value(), n) : r;
      },
      t, {n, t.rank() - 1}, "row");
}

}  // namespace xtc
