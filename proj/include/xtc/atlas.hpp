#pragma once

#include <functional>
#include <vector>

#include "xtc/differential.hpp"
#include "xtc/field.hpp"
#include "xtc/geometry.hpp"

namespace xtc {

struct ParameterAxis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
};

// Face of the parameter box that lies on the manifold boundary; the outward
// parameter direction is +axis when upper is true and -axis otherwise.
struct ChartFace {
  int axis = 0;
  bool upper = true;
};

struct QuadratureSettings {
  int order = 16;
  int panels = 2;
};

// Parametrisation of a piece of M over a box; faces lists the true boundary.
class Chart {
 public:
  using Map = std::function<Point(std::span<const double> u, double t)>;
  // Columns dx/du_k.
  using Jacobian = std::function<std::vector<Vector>(std::span<const double> u, double t)>;

  Chart(std::vector<ParameterAxis> axes, Map map, Jacobian jacobian = {},
        std::vector<ChartFace> faces = {});

  int param_dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<ParameterAxis>& axes() const { return axes_; }
  const std::vector<ChartFace>& faces() const { return faces_; }

  Point operator()(std::span<const double> u, double t = 0.0) const { return map_(u, t); }
  std::vector<Vector> tangents(std::span<const double> u, double t = 0.0) const;

  Chart restricted(std::vector<ParameterAxis> axes, std::vector<ChartFace> faces) const;

 private:
  std::vector<ParameterAxis> axes_;
  Map map_;
  Jacobian jacobian_;
  std::vector<ChartFace> faces_;
};

struct QuadratureNode {
  Point x;
  double weight = 0.0;
  // Chart tangents dx/du_k at the node.
  std::vector<Vector> tangents;
};

struct BoundaryNode {
  Point x;
  double weight = 0.0;
  // Outward unit co-normal t: tangent to M, normal to the boundary.
  Vector conormal;
  // Boundary tangent tau with det(t, tau, n_1..n_m) > 0; empty unless dim M = 2.
  Vector tau;
};

class Atlas {
 public:
  Atlas(GeometryPtr geometry, std::vector<Chart> charts, QuadratureSettings settings = {});

  const LevelSetGeometry& geometry() const { return *geometry_; }
  const GeometryPtr& geometry_ptr() const { return geometry_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const QuadratureSettings& settings() const { return settings_; }
  bool closed() const;

  std::vector<QuadratureNode> nodes(double t = 0.0) const;
  std::vector<BoundaryNode> boundary_nodes(const Calculus& calc, double t = 0.0) const;

  Atlas with_settings(QuadratureSettings settings) const;
  Atlas with_geometry(GeometryPtr geometry) const;

 private:
  GeometryPtr geometry_;
  std::vector<Chart> charts_;
  QuadratureSettings settings_;
};

// Atlas of M(t0 + dt) obtained by moving every chart point with one classical
// Runge-Kutta step of the material velocity w.
Atlas moved_atlas(const Atlas& atlas, const TensorField& velocity, double t0, double dt);

// Largest |d_i| over all quadrature nodes.
double max_level_violation(const Atlas& atlas, double t = 0.0);

}  // namespace xtc
