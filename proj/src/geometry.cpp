#include "xtc/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "xtc/errors.hpp"

namespace xtc {

LevelSetGeometry::LevelSetGeometry(std::string name, int dim, std::vector<TensorField> levels,
                                   double tube_halfwidth, bool time_dependent)
    : name_(std::move(name)),
      dim_(dim),
      levels_(std::move(levels)),
      delta_(tube_halfwidth),
      time_dependent_(time_dependent) {
  const int m = static_cast<int>(levels_.size());
  if (dim_ < 2 || dim_ > kMaxDim) throw ShapeError("geometry dimension must lie in [2, 8]");
  if (m < 1 || m >= dim_) throw ShapeError("codimension must satisfy 1 <= m < n");
  for (const auto& d : levels_)
    if (d.dim() != dim_ || d.rank() != 0) throw ShapeError("level functions must be scalar fields on R^n");
  if (!(delta_ > 0.0)) throw ShapeError("tube half-width must be positive");
}

bool LevelSetGeometry::has_analytic_hessians() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const TensorField& d) {
    return d.has_gradient() && d.gradient().has_gradient();
  });
}

std::vector<double> LevelSetGeometry::level_values(std::span<const double> x, double t) const {
  std::vector<double> v;
  v.reserve(levels_.size());
  for (const auto& d : levels_) v.push_back(d(x, t).value());
  return v;
}

bool LevelSetGeometry::in_tube(std::span<const double> x, double t) const {
  double s = 0.0;
  for (const auto& d : levels_) s += std::abs(d(x, t).value());
  return s < delta_;
}

TensorField::Domain LevelSetGeometry::tube() const {
  auto levels = levels_;
  const double delta = delta_;
  return [levels, delta](std::span<const double> x, double t) {
    double s = 0.0;
    for (const auto& d : levels) s += std::abs(d(x, t).value());
    return s < delta;
  };
}

GeometryFrame frame_from_gradients(std::span<const double> x, double t, std::vector<Vector> gradients) {
  GeometryFrame f;
  f.x.assign(x.begin(), x.end());
  f.t = t;
  const int n = static_cast<int>(x.size());
  for (std::size_t i = 0; i < gradients.size(); ++i) {
    if (norm(gradients[i]) < kGradFloor)
      throw DegenerateGeometryError("gradient of level function " + std::to_string(i) +
                                    " vanishes at " + format_point(x, t));
    Vector v = gradients[i];
    for (const auto& nj : f.normals) v = axpy(-dot(v, nj), nj, v);
    const double len = norm(v);
    if (len < kGradFloor)
      throw DegenerateGeometryError("level-function gradients are linearly dependent at " +
                                    format_point(x, t));
    f.normals.push_back(scaled(1.0 / len, v));
  }
  f.gradients = std::move(gradients);
  f.N = Tensor(n, 2);
  for (const auto& ni : f.normals) f.N += outer(Tensor::covector(ni), Tensor::covector(ni));
  f.P = Tensor::identity(n) - f.N;
  return f;
}

GeometryFrame compute_frame(const LevelSetGeometry& geometry, const DerivativeEngine& engine,
                            std::span<const double> x, double t) {
  if (static_cast<int>(x.size()) != geometry.dim()) throw ShapeError("compute_frame: point dimension");
  if (!geometry.in_tube(x, t))
    throw DegenerateGeometryError("point outside the tube of " + geometry.name() + " at " +
                                  format_point(x, t));
  std::vector<Vector> gradients;
  for (const auto& d : geometry.levels()) {
    Tensor g = engine.gradient(d, x, t);
    gradients.emplace_back(g.leaves().begin(), g.leaves().end());
  }
  return frame_from_gradients(x, t, std::move(gradients));
}

FrameJet compute_frame_jet(const LevelSetGeometry& geometry, std::span<const double> x, double t) {
  if (!geometry.has_analytic_hessians())
    throw NumericalError("geometry " + geometry.name() + " has no exact Hessians");
  if (!geometry.in_tube(x, t))
    throw DegenerateGeometryError("point outside the tube of " + geometry.name() + " at " +
                                  format_point(x, t));
  const int n = geometry.dim();
  const int m = geometry.codim();
  std::vector<Vector> gradients;
  std::vector<Tensor> hessians;
  for (const auto& d : geometry.levels()) {
    Tensor g = d.gradient()(x, t);
    gradients.emplace_back(g.leaves().begin(), g.leaves().end());
    hessians.push_back(d.gradient().gradient()(x, t));
  }
  FrameJet jet{frame_from_gradients(x, t, gradients), {}};
  const auto& g = jet.frame.gradients;
  const auto& nrm = jet.frame.normals;
  jet.dnormals.assign(m, std::vector<Vector>(n, Vector(n, 0.0)));
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < m; ++i) {
      Vector dg = slice_last(hessians[i], c).data();
      Vector v = g[i];
      Vector dv = dg;
      for (int j = 0; j < i; ++j) {
        const double gn = dot(g[i], nrm[j]);
        const double dgn = dot(dg, nrm[j]) + dot(g[i], jet.dnormals[j][c]);
        v = axpy(-gn, nrm[j], v);
        dv = axpy(-dgn, nrm[j], dv);
        dv = axpy(-gn, jet.dnormals[j][c], dv);
      }
      const double len = norm(v);
      jet.dnormals[i][c] = scaled(1.0 / len, axpy(-dot(nrm[i], dv), nrm[i], dv));
    }
  }
  return jet;
}

double determinant(const std::vector<Vector>& columns) {
  const int n = static_cast<int>(columns.size());
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = columns[j][i];
  return a.determinant();
}

TangentBasis2D tangent_basis_2d(const GeometryFrame& frame) {
  const int n = frame.dim();
  if (n - frame.codim() != 2) throw ShapeError("tangent_basis_2d needs a two-dimensional manifold");
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  std::stable_sort(axes.begin(), axes.end(),
                   [&](int a, int b) { return frame.N[a * n + a] < frame.N[b * n + b]; });
  std::vector<Vector> basis;
  for (int k : axes) {
    Vector v = frame.P.row(k).data();
    for (const auto& b : basis) v = axpy(-dot(v, b), b, v);
    const double len = norm(v);
    if (len < 1e-6) continue;
    basis.push_back(scaled(1.0 / len, v));
    if (basis.size() == 2) break;
  }
  if (basis.size() < 2) throw DegenerateGeometryError("tangent plane could not be spanned");
  std::vector<Vector> cols = {basis[0], basis[1]};
  for (const auto& nv : frame.normals) cols.push_back(nv);
  if (determinant(cols) < 0.0) basis[1] = scaled(-1.0, basis[1]);
  return {basis[0], basis[1]};
}

Tensor project(const GeometryFrame& frame, const Tensor& t) {
  if (t.rank() == 0) return t;
  if (t.dim() != frame.dim()) throw ShapeError("project: dimension mismatch");
  const int n = t.dim();
  std::vector<Tensor> rows;
  rows.reserve(n);
  for (int k = 0; k < n; ++k) rows.push_back(project(frame, t.row(k)));
  Tensor tilde = Tensor::from_rows(rows);
  Tensor r = tilde;
  for (const auto& ni : frame.normals) r -= outer(Tensor::covector(ni), insert_left(tilde, ni));
  return r;
}

bool is_tangent(const GeometryFrame& frame, const Tensor& t, double tol) {
  return norm(project(frame, t) - t) <= tol * std::max(1.0, norm(t));
}

Vector dagger(const GeometryFrame& frame, std::span<const double> u) {
  if (static_cast<int>(u.size()) != frame.dim()) throw ShapeError("dagger: dimension mismatch");
  const auto basis = tangent_basis_2d(frame);
  return axpy(dot(u, basis.t1), basis.t2, scaled(-dot(u, basis.t2), basis.t1));
}

Tensor rotation_tensor(const GeometryFrame& frame) {
  const int n = frame.dim();
  if (n - frame.codim() != 2) throw ShapeError("rotation_tensor needs a two-dimensional manifold");
  const auto basis = tangent_basis_2d(frame);
  Tensor r(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      r[a * n + b] = basis.t2[a] * basis.t1[b] - basis.t1[a] * basis.t2[b];
  return r;
}

Tensor rotation_tensor_derivative(const GeometryFrame& frame,
                                  const std::vector<std::vector<Vector>>& dnormals, int c) {
  const int n = frame.dim();
  const int m = frame.codim();
  Tensor r(n, 2);
  std::vector<Vector> cols(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        cols[0] = unit_vector(n, b);
        cols[1] = unit_vector(n, a);
        for (int j = 0; j < m; ++j) cols[2 + j] = j == i ? dnormals[i][c] : frame.normals[j];
        acc += determinant(cols);
      }
      r[a * n + b] = acc;
    }
  return r;
}

FrameFields::FrameFields(GeometryPtr geometry, DerivativeEngine engine)
    : geometry_(std::move(geometry)), engine_(engine) {
  const int n = geometry_->dim();
  const int m = geometry_->codim();
  const auto domain = geometry_->tube();
  bool exact_gradients = true;
  for (const auto& d : geometry_->levels()) exact_gradients = exact_gradients && d.has_gradient();
  const int depth = engine_.analytic() && exact_gradients ? 0 : 1;
  const bool jets = geometry_->has_analytic_hessians();
  const GeometryPtr geo = geometry_;
  const DerivativeEngine eng = engine_;

  auto jet_field = [geo, domain, n](int rank, std::string label, auto fill) {
    return TensorField({n, rank},
                       [geo, fill](std::span<const double> x, double t) {
                         return fill(compute_frame_jet(*geo, x, t));
                       },
                       std::move(label))
        .with_domain(domain);
  };

  for (int i = 0; i < m; ++i) {
    TensorField f({n, 1},
                  [geo, eng, i](std::span<const double> x, double t) {
                    return Tensor::covector(compute_frame(*geo, eng, x, t).normals[i]);
                  },
                  "normal " + std::to_string(i));
    f = f.with_domain(domain).with_depth(depth);
    if (jets)
      f = f.with_gradient([jet_field, i, n] {
        return jet_field(2, "grad normal", [i, n](const FrameJet& jet) {
          Tensor g(n, 2);
          for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) g[a * n + c] = jet.dnormals[i][c][a];
          return g;
        });
      });
    normals_.push_back(f);
  }

  auto grad_nproj = [n](const FrameJet& jet) {
    Tensor g(n, 3);
    const auto& nrm = jet.frame.normals;
    for (std::size_t i = 0; i < nrm.size(); ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            g[(a * n + b) * n + c] +=
                jet.dnormals[i][c][a] * nrm[i][b] + nrm[i][a] * jet.dnormals[i][c][b];
    return g;
  };

  n_proj_ = TensorField({n, 2},
                        [geo, eng](std::span<const double> x, double t) {
                          return compute_frame(*geo, eng, x, t).N;
                        },
                        "N")
                .with_domain(domain)
                .with_depth(depth);
  p_proj_ = TensorField({n, 2},
                        [geo, eng](std::span<const double> x, double t) {
                          return compute_frame(*geo, eng, x, t).P;
                        },
                        "P")
                .with_domain(domain)
                .with_depth(depth);
  if (jets) {
    n_proj_ = n_proj_.with_gradient([jet_field, grad_nproj] { return jet_field(3, "grad N", grad_nproj); });
    p_proj_ = p_proj_.with_gradient([jet_field, grad_nproj] {
      return jet_field(3, "grad P", [grad_nproj](const FrameJet& jet) { return -grad_nproj(jet); });
    });
  }

  if (n - m == 2) {
    rotation_ = TensorField({n, 2},
                            [geo, eng](std::span<const double> x, double t) {
                              return rotation_tensor(compute_frame(*geo, eng, x, t));
                            },
                            "R")
                    .with_domain(domain)
                    .with_depth(depth);
    if (jets)
      rotation_ = rotation_.with_gradient([jet_field, n] {
        return jet_field(3, "grad R", [n](const FrameJet& jet) {
          std::vector<Tensor> parts;
          for (int c = 0; c < n; ++c)
            parts.push_back(rotation_tensor_derivative(jet.frame, jet.dnormals, c));
          return stack_last(parts);
        });
      });
  }
}

GeometryFrame FrameFields::frame(std::span<const double> x, double t) const {
  return compute_frame(*geometry_, engine_, x, t);
}

const TensorField& FrameFields::rotation() const {
  if (!rotation_.valid()) throw ShapeError("rotation field needs a two-dimensional manifold");
  return rotation_;
}

}  // namespace xtc
