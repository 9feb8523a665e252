#pragma once

#include <memory>
#include <string>
#include <vector>

#include "xtc/derivative_engine.hpp"
#include "xtc/field.hpp"

namespace xtc {

inline constexpr double kGradFloor = 1e-8;

// M = {x : d_1(x) = ... = d_m(x) = 0} inside the tube sum_i |d_i| < delta.
class LevelSetGeometry {
 public:
  LevelSetGeometry(std::string name, int dim, std::vector<TensorField> levels,
                   double tube_halfwidth, bool time_dependent = false);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int codim() const { return static_cast<int>(levels_.size()); }
  int manifold_dim() const { return dim_ - codim(); }
  double tube_halfwidth() const { return delta_; }
  bool time_dependent() const { return time_dependent_; }
  const std::vector<TensorField>& levels() const { return levels_; }
  // True when every level function carries exact first and second derivatives.
  bool has_analytic_hessians() const;

  std::vector<double> level_values(std::span<const double> x, double t = 0.0) const;
  bool in_tube(std::span<const double> x, double t = 0.0) const;
  TensorField::Domain tube() const;

 private:
  std::string name_;
  int dim_;
  std::vector<TensorField> levels_;
  double delta_;
  bool time_dependent_;
};

using GeometryPtr = std::shared_ptr<const LevelSetGeometry>;

struct GeometryFrame {
  Point x;
  double t = 0.0;
  std::vector<Vector> gradients;
  std::vector<Vector> normals;
  Tensor N;
  Tensor P;

  int dim() const { return static_cast<int>(x.size()); }
  int codim() const { return static_cast<int>(normals.size()); }
};

// Frame together with the Cartesian derivatives of the normals:
// dnormals[i][c] = d n_i / d x_c.
struct FrameJet {
  GeometryFrame frame;
  std::vector<std::vector<Vector>> dnormals;
};

// Modified Gram-Schmidt of the gradients in the listed order.
GeometryFrame frame_from_gradients(std::span<const double> x, double t, std::vector<Vector> gradients);
GeometryFrame compute_frame(const LevelSetGeometry& geometry, const DerivativeEngine& engine,
                            std::span<const double> x, double t = 0.0);
// Requires exact Hessians of the level functions.
FrameJet compute_frame_jet(const LevelSetGeometry& geometry, std::span<const double> x,
                           double t = 0.0);

// Orthonormal (t1, t2) spanning the tangent plane with det(t1, t2, n_1..n_m) > 0.
struct TangentBasis2D {
  Vector t1;
  Vector t2;
};
TangentBasis2D tangent_basis_2d(const GeometryFrame& frame);

// Recursive tangential projection: T~ = {P T*}, PT = T~ - sum_i n_i (x) T~(n_i).
Tensor project(const GeometryFrame& frame, const Tensor& t);
bool is_tangent(const GeometryFrame& frame, const Tensor& t, double tol = 1e-10);

// Quarter turn in the tangent plane, u -> -(u.t2) t1 + (u.t1) t2; needs n - m = 2.
Vector dagger(const GeometryFrame& frame, std::span<const double> u);
// Matrix R with R[a][b] = det(e_b, e_a, n_1, .., n_m), so dagger(u) = R u.
Tensor rotation_tensor(const GeometryFrame& frame);
Tensor rotation_tensor_derivative(const GeometryFrame& frame,
                                  const std::vector<std::vector<Vector>>& dnormals, int c);

double determinant(const std::vector<Vector>& columns);

// Frame quantities as ambient fields over the tube. Exact gradients are attached
// when the level functions provide Hessians; the engine decides whether to use them.
class FrameFields {
 public:
  FrameFields(GeometryPtr geometry, DerivativeEngine engine);

  const GeometryPtr& geometry() const { return geometry_; }
  const DerivativeEngine& engine() const { return engine_; }
  GeometryFrame frame(std::span<const double> x, double t = 0.0) const;

  const TensorField& normal(int i) const { return normals_.at(i); }
  const TensorField& normal_projector() const { return n_proj_; }
  const TensorField& projector() const { return p_proj_; }
  // Requires n - m = 2.
  const TensorField& rotation() const;

 private:
  GeometryPtr geometry_;
  DerivativeEngine engine_;
  std::vector<TensorField> normals_;
  TensorField n_proj_;
  TensorField p_proj_;
  TensorField rotation_;
};

}  // namespace xtc
