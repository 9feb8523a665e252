#include "xtc/atlas.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "xtc/errors.hpp"
#include "xtc/quadrature.hpp"

namespace xtc {
namespace {

inline constexpr double kMinGram = 1e-14;

double gram_determinant(const std::vector<Vector>& columns) {
  const int k = static_cast<int>(columns.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = dot(columns[i], columns[j]);
  return g.determinant();
}

struct AxisRule {
  std::vector<double> u;
  std::vector<double> w;
};

AxisRule axis_rule(const ParameterAxis& axis, const QuadratureSettings& s) {
  const GaussRule& rule = gauss_legendre(s.order);
  AxisRule r;
  const double width = (axis.hi - axis.lo) / s.panels;
  for (int p = 0; p < s.panels; ++p) {
    const double a = axis.lo + p * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      r.u.push_back(a + 0.5 * width * (rule.nodes[i] + 1.0));
      r.w.push_back(0.5 * width * rule.weights[i]);
    }
  }
  return r;
}

// Visits the tensor-product grid over the given axes in lexicographic order.
template <class Visit>
void for_each_grid_point(const std::vector<AxisRule>& rules, Visit visit) {
  const std::size_t dims = rules.size();
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> u(dims);
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < dims; ++k) {
      u[k] = rules[k].u[idx[k]];
      w *= rules[k].w[idx[k]];
    }
    visit(u, w);
    std::size_t k = dims;
    while (k > 0) {
      --k;
      if (++idx[k] < rules[k].u.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (dims == 0) return;
  }
}

}  // namespace

Chart::Chart(std::vector<ParameterAxis> axes, Map map, Jacobian jacobian, std::vector<ChartFace> faces)
    : axes_(std::move(axes)), map_(std::move(map)), jacobian_(std::move(jacobian)), faces_(std::move(faces)) {
  if (axes_.empty()) throw ShapeError("chart needs at least one parameter axis");
  for (const auto& f : faces_) {
    if (f.axis < 0 || f.axis >= param_dim()) throw ShapeError("chart face axis out of range");
    if (axes_[f.axis].periodic) throw ShapeError("periodic axes have no boundary faces");
  }
}

std::vector<Vector> Chart::tangents(std::span<const double> u, double t) const {
  if (jacobian_) return jacobian_(u, t);
  std::vector<Vector> cols;
  Vector v(u.begin(), u.end());
  for (int k = 0; k < param_dim(); ++k) {
    const double h = 1e-4 * std::max(1.0, std::abs(u[k]));
    auto at = [&](double s) {
      v[k] = u[k] + s * h;
      Point x = map_(v, t);
      v[k] = u[k];
      return x;
    };
    const Point a = at(2.0), b = at(1.0), c = at(-1.0), d = at(-2.0);
    Vector col(a.size());
    for (std::size_t i = 0; i < col.size(); ++i)
      col[i] = (8.0 * (b[i] - c[i]) - (a[i] - d[i])) / (12.0 * h);
    cols.push_back(std::move(col));
  }
  return cols;
}

Chart Chart::restricted(std::vector<ParameterAxis> axes, std::vector<ChartFace> faces) const {
  if (axes.size() != axes_.size()) throw ShapeError("restricted chart must keep the parameter dimension");
  return Chart(std::move(axes), map_, jacobian_, std::move(faces));
}

Atlas::Atlas(GeometryPtr geometry, std::vector<Chart> charts, QuadratureSettings settings)
    : geometry_(std::move(geometry)), charts_(std::move(charts)), settings_(settings) {
  if (settings_.order < 1 || settings_.order > 256) throw ConfigError("quadrature order must lie in [1, 256]");
  if (settings_.panels < 1 || settings_.panels > 64) throw ConfigError("panel count must lie in [1, 64]");
  for (const auto& c : charts_)
    if (c.param_dim() != geometry_->manifold_dim())
      throw ShapeError("chart parameter dimension differs from the manifold dimension");
}

bool Atlas::closed() const {
  for (const auto& c : charts_)
    if (!c.faces().empty()) return false;
  return true;
}

Atlas Atlas::with_settings(QuadratureSettings settings) const {
  return Atlas(geometry_, charts_, settings);
}

Atlas Atlas::with_geometry(GeometryPtr geometry) const {
  return Atlas(std::move(geometry), charts_, settings_);
}

std::vector<QuadratureNode> Atlas::nodes(double t) const {
  std::vector<QuadratureNode> out;
  for (const auto& chart : charts_) {
    std::vector<AxisRule> rules;
    for (const auto& axis : chart.axes()) rules.push_back(axis_rule(axis, settings_));
    for_each_grid_point(rules, [&](const std::vector<double>& u, double w) {
      const auto cols = chart.tangents(u, t);
      const double g = gram_determinant(cols);
      Point x = chart(u, t);
      if (!(g >= kMinGram))
        throw DegenerateGeometryError("chart Gram determinant below 1e-14 at " + format_point(x, t));
      out.push_back({std::move(x), w * std::sqrt(g), cols});
    });
  }
  return out;
}

std::vector<BoundaryNode> Atlas::boundary_nodes(const Calculus& calc, double t) const {
  std::vector<BoundaryNode> out;
  for (const auto& chart : charts_) {
    for (const auto& face : chart.faces()) {
      std::vector<AxisRule> rules;
      for (int k = 0; k < chart.param_dim(); ++k) {
        if (k == face.axis) continue;
        rules.push_back(axis_rule(chart.axes()[k], settings_));
      }
      const double fixed = face.upper ? chart.axes()[face.axis].hi : chart.axes()[face.axis].lo;
      for_each_grid_point(rules, [&](const std::vector<double>& v, double w) {
        std::vector<double> u;
        for (int k = 0, j = 0; k < chart.param_dim(); ++k) u.push_back(k == face.axis ? fixed : v[j++]);
        const auto cols = chart.tangents(u, t);
        std::vector<Vector> face_cols;
        for (int k = 0; k < chart.param_dim(); ++k)
          if (k != face.axis) face_cols.push_back(cols[k]);
        const double g = gram_determinant(face_cols);
        BoundaryNode node;
        node.x = chart(u, t);
        if (!(g >= kMinGram))
          throw DegenerateGeometryError("boundary Gram determinant below 1e-14 at " +
                                        format_point(node.x, t));
        node.weight = w * std::sqrt(g);
        const GeometryFrame frame = calc.frame(node.x, t);
        Vector c = insert_right(frame.P, cols[face.axis]).data();
        if (!face.upper) c = scaled(-1.0, c);
        std::vector<Vector> ortho;
        for (auto fc : face_cols) {
          for (const auto& o : ortho) fc = axpy(-dot(fc, o), o, fc);
          ortho.push_back(scaled(1.0 / norm(fc), fc));
        }
        for (const auto& o : ortho) c = axpy(-dot(c, o), o, c);
        node.conormal = scaled(1.0 / norm(c), c);
        if (frame.dim() - frame.codim() == 2) node.tau = dagger(frame, node.conormal);
        out.push_back(std::move(node));
      });
    }
  }
  return out;
}

Atlas moved_atlas(const Atlas& atlas, const TensorField& velocity, double t0, double dt) {
  std::vector<Chart> charts;
  for (const auto& chart : atlas.charts()) {
    auto map = [chart, velocity, t0, dt](std::span<const double> u, double) {
      const Point x = chart(u, t0);
      auto w = [&](const Point& y, double t) { return velocity(y, t).data(); };
      const Vector k1 = w(x, t0);
      const Vector k2 = w(axpy(0.5 * dt, k1, x), t0 + 0.5 * dt);
      const Vector k3 = w(axpy(0.5 * dt, k2, x), t0 + 0.5 * dt);
      const Vector k4 = w(axpy(dt, k3, x), t0 + dt);
      Point y = x;
      for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      return y;
    };
    charts.emplace_back(chart.axes(), map, Chart::Jacobian{}, chart.faces());
  }
  return Atlas(atlas.geometry_ptr(), std::move(charts), atlas.settings());
}

double max_level_violation(const Atlas& atlas, double t) {
  double worst = 0.0;
  for (const auto& node : atlas.nodes(t))
    for (double d : atlas.geometry().level_values(node.x, t)) worst = std::max(worst, std::abs(d));
  return worst;
}

}  // namespace xtc
