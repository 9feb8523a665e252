#include "xtc/registry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xtc/errors.hpp"

namespace xtc {
namespace {

constexpr double kPi = std::numbers::pi;

using Span = std::span<const double>;

Tensor radial_hessian(Span x) {
  // Hessian of |x|.
  const int n = static_cast<int>(x.size());
  const double r = norm(x);
  Tensor h(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h[a * n + b] = ((a == b ? 1.0 : 0.0) - x[a] * x[b] / (r * r)) / r;
  return h;
}

// Hessian of rho = sqrt(x^2 + y^2) in R^3.
Tensor cylinder_hessian(Span x) {
  const double rho = std::hypot(x[0], x[1]);
  const double r3 = rho * rho * rho;
  Tensor h(3, 2);
  h[0] = 1.0 / rho - x[0] * x[0] / r3;
  h[1] = h[3] = -x[0] * x[1] / r3;
  h[4] = 1.0 / rho - x[1] * x[1] / r3;
  return h;
}

TensorField sphere_level(int dim, double radius, double rate) {
  return scalar_field_with_hessian(
      dim, [radius, rate](Span x, double t) { return norm(x) - (radius + rate * t); },
      [](Span x, double) { return scaled(1.0 / norm(x), x); },
      [](Span x, double) { return radial_hessian(x); }, "sphere level",
      [rate](Span, double) { return -rate; });
}

TensorField cylinder_level(double radius) {
  return scalar_field_with_hessian(
      3, [radius](Span x, double) { return std::hypot(x[0], x[1]) - radius; },
      [](Span x, double) {
        const double rho = std::hypot(x[0], x[1]);
        return Vector{x[0] / rho, x[1] / rho, 0.0};
      },
      [](Span x, double) { return cylinder_hessian(x); }, "cylinder level");
}

TensorField plane_level(Vector normal) {
  const int n = static_cast<int>(normal.size());
  TensorField d({n, 0}, [normal](Span x, double) { return Tensor::scalar(dot(x, normal)); }, "plane level");
  return d.with_gradient([normal] { return constant_field(Tensor::covector(normal), static_cast<int>(normal.size())); })
      .with_time_derivative([n] { return constant_field(Tensor::zeros(n, 0), n); });
}

Chart sphere_chart(std::function<double(double)> radius_at, double theta_max, bool with_face) {
  auto map = [radius_at](Span u, double t) {
    const double r = radius_at(t);
    return Point{r * std::sin(u[0]) * std::cos(u[1]), r * std::sin(u[0]) * std::sin(u[1]), r * std::cos(u[0])};
  };
  auto jac = [radius_at](Span u, double t) {
    const double r = radius_at(t);
    const double st = std::sin(u[0]), ct = std::cos(u[0]), sp = std::sin(u[1]), cp = std::cos(u[1]);
    return std::vector<Vector>{{r * ct * cp, r * ct * sp, -r * st}, {-r * st * sp, r * st * cp, 0.0}};
  };
  std::vector<ChartFace> faces;
  if (with_face) faces.push_back({0, true});
  return Chart({{0.0, theta_max, false}, {0.0, 2.0 * kPi, true}}, map, jac, faces);
}

double require_positive(const GeometryParams& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("geometry parameter " + key + " must be positive");
  return v;
}

}  // namespace

TensorField scalar_field_with_hessian(int dim, std::function<double(Span, double)> value,
                                      std::function<Vector(Span, double)> gradient,
                                      std::function<Tensor(Span, double)> hessian, std::string label,
                                      std::function<double(Span, double)> time_rate) {
  TensorField d({dim, 0}, [value](Span x, double t) { return Tensor::scalar(value(x, t)); }, label);
  d = d.with_gradient([dim, gradient, hessian, label] {
    TensorField g({dim, 1}, [gradient](Span x, double t) { return Tensor::covector(gradient(x, t)); },
                  "grad " + label);
    return g.with_gradient([dim, hessian, label] {
      return TensorField({dim, 2}, [hessian](Span x, double t) { return hessian(x, t); }, "hess " + label);
    });
  });
  if (time_rate)
    d = d.with_time_derivative([dim, time_rate, label] {
      return TensorField({dim, 0}, [time_rate](Span x, double t) { return Tensor::scalar(time_rate(x, t)); },
                         "dt " + label);
    });
  return d;
}

const std::vector<GeometryInfo>& geometry_catalog() {
  static const std::vector<GeometryInfo> catalog = {
      {"circle2d", "circle of radius R in R^2", {{"R", 1.0}}},
      {"circle3d", "horizontal circle of radius R in R^3 (codimension 2)", {{"R", 1.0}}},
      {"sphere", "sphere of radius R in R^3", {{"R", 1.0}}},
      {"hemisphere", "upper hemisphere z >= 0 of radius R", {{"R", 1.0}}},
      {"torus", "torus with radii R > r; phi_max/psi_max < 2pi select a patch",
       {{"R", 2.0}, {"r", 0.5}, {"phi_max", 2.0 * kPi}, {"psi_max", 2.0 * kPi}}},
      {"helix_segment", "helix (a cos s, a sin s, b s) for s in [0, 2 pi turns]",
       {{"a", 1.0}, {"b", 0.2}, {"turns", 1.0}}},
      {"plane_disk", "disk of radius R in the plane z = 0", {{"R", 1.0}}},
      {"expanding_sphere", "sphere of radius R0 + c t moving with w = c x/|x|", {{"R0", 1.0}, {"c", 0.1}}},
      {"translating_plane", "unit disk in the plane z = c t moving with w = c e_z", {{"c", 0.1}}},
      {"rotating_plane", "unit disk rotating about the y axis with angular speed omega", {{"omega", 1.0}}},
  };
  return catalog;
}

GeometryParams parse_geometry_params(const std::string& text) {
  GeometryParams params;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("geometry parameter '" + item + "' is not of the form k=v");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      params[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ConfigError("geometry parameter " + key + " has non-numeric value '" + val + "'");
    }
  }
  return params;
}

GeometryInstance make_geometry(const std::string& name, const GeometryParams& user, QuadratureSettings q) {
  const GeometryInfo* info = nullptr;
  for (const auto& g : geometry_catalog())
    if (g.name == name) info = &g;
  if (!info) throw ConfigError("unknown geometry '" + name + "'");
  GeometryParams p = info->defaults;
  for (const auto& [k, v] : user) {
    if (!p.count(k)) throw ConfigError("geometry " + name + " has no parameter '" + k + "'");
    p[k] = v;
  }

  GeometryPtr geometry;
  std::vector<Chart> charts;
  std::optional<TensorField> velocity;
  auto finish = [&](GeometryPtr geo, std::vector<Chart> c) {
    geometry = std::move(geo);
    charts = std::move(c);
  };

  if (name == "circle2d") {
    const double r = require_positive(p, "R");
    auto geo = std::make_shared<LevelSetGeometry>(name, 2, std::vector<TensorField>{sphere_level(2, r, 0.0)}, 0.5 * r);
    Chart chart({{0.0, 2.0 * kPi, true}},
                [r](Span u, double) { return Point{r * std::cos(u[0]), r * std::sin(u[0])}; },
                [r](Span u, double) { return std::vector<Vector>{{-r * std::sin(u[0]), r * std::cos(u[0])}}; });
    finish(geo, {chart});
  } else if (name == "circle3d") {
    const double r = require_positive(p, "R");
    auto geo = std::make_shared<LevelSetGeometry>(
        name, 3, std::vector<TensorField>{plane_level({0.0, 0.0, 1.0}), cylinder_level(r)}, 0.5 * r);
    Chart chart({{0.0, 2.0 * kPi, true}},
                [r](Span u, double) { return Point{r * std::cos(u[0]), r * std::sin(u[0]), 0.0}; },
                [r](Span u, double) {
                  return std::vector<Vector>{{-r * std::sin(u[0]), r * std::cos(u[0]), 0.0}};
                });
    finish(geo, {chart});
  } else if (name == "sphere" || name == "hemisphere") {
    const double r = require_positive(p, "R");
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{sphere_level(3, r, 0.0)}, 0.5 * r);
    const bool half = name == "hemisphere";
    finish(geo, {sphere_chart([r](double) { return r; }, half ? 0.5 * kPi : kPi, half)});
  } else if (name == "torus") {
    const double big = require_positive(p, "R");
    const double small = require_positive(p, "r");
    if (small >= big) throw ConfigError("torus needs r < R");
    const double phi_max = require_positive(p, "phi_max");
    const double psi_max = require_positive(p, "psi_max");
    if (phi_max > 2.0 * kPi + 1e-12 || psi_max > 2.0 * kPi + 1e-12)
      throw ConfigError("torus patch angles must not exceed 2 pi");
    auto level = scalar_field_with_hessian(
        3,
        [big, small](Span x, double) {
          return std::hypot(std::hypot(x[0], x[1]) - big, x[2]) - small;
        },
        [big](Span x, double) {
          const double rho = std::hypot(x[0], x[1]);
          const double s = rho - big;
          const double qn = std::hypot(s, x[2]);
          return Vector{s / qn * x[0] / rho, s / qn * x[1] / rho, x[2] / qn};
        },
        [big](Span x, double) {
          const double rho = std::hypot(x[0], x[1]);
          const double s = rho - big;
          const double z = x[2];
          const double qn = std::hypot(s, z);
          const double q3 = qn * qn * qn;
          const Vector grho{x[0] / rho, x[1] / rho, 0.0};
          const Vector ez{0.0, 0.0, 1.0};
          Tensor hr = cylinder_hessian(x);
          Tensor h(3, 2);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              h[a * 3 + b] = z * z / q3 * grho[a] * grho[b] + s / qn * hr[a * 3 + b] -
                             s * z / q3 * (grho[a] * ez[b] + ez[a] * grho[b]) + s * s / q3 * ez[a] * ez[b];
          return h;
        },
        "torus level");
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{level}, 0.5 * small);
    const bool phi_closed = phi_max >= 2.0 * kPi - 1e-12;
    const bool psi_closed = psi_max >= 2.0 * kPi - 1e-12;
    std::vector<ChartFace> faces;
    if (!phi_closed) faces.insert(faces.end(), {{0, false}, {0, true}});
    if (!psi_closed) faces.insert(faces.end(), {{1, false}, {1, true}});
    Chart chart({{0.0, phi_max, phi_closed}, {0.0, psi_max, psi_closed}},
                [big, small](Span u, double) {
                  const double w = big + small * std::cos(u[1]);
                  return Point{w * std::cos(u[0]), w * std::sin(u[0]), small * std::sin(u[1])};
                },
                [big, small](Span u, double) {
                  const double w = big + small * std::cos(u[1]);
                  return std::vector<Vector>{
                      {-w * std::sin(u[0]), w * std::cos(u[0]), 0.0},
                      {-small * std::sin(u[1]) * std::cos(u[0]), -small * std::sin(u[1]) * std::sin(u[0]),
                       small * std::cos(u[1])}};
                },
                faces);
    finish(geo, {chart});
  } else if (name == "helix_segment") {
    const double a = require_positive(p, "a");
    const double b = require_positive(p, "b");
    const double turns = require_positive(p, "turns");
    auto twist = scalar_field_with_hessian(
        3, [b](Span x, double) { return x[0] * std::sin(x[2] / b) - x[1] * std::cos(x[2] / b); },
        [b](Span x, double) {
          const double s = std::sin(x[2] / b), c = std::cos(x[2] / b);
          return Vector{s, -c, (x[0] * c + x[1] * s) / b};
        },
        [b](Span x, double) {
          const double s = std::sin(x[2] / b), c = std::cos(x[2] / b);
          Tensor h(3, 2);
          h[2] = h[6] = c / b;
          h[5] = h[7] = s / b;
          h[8] = (-x[0] * s + x[1] * c) / (b * b);
          return h;
        },
        "helix twist");
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{cylinder_level(a), twist},
                                                  0.5 * a);
    Chart chart({{0.0, 2.0 * kPi * turns, false}},
                [a, b](Span u, double) { return Point{a * std::cos(u[0]), a * std::sin(u[0]), b * u[0]}; },
                [a, b](Span u, double) {
                  return std::vector<Vector>{{-a * std::sin(u[0]), a * std::cos(u[0]), b}};
                },
                {{0, false}, {0, true}});
    finish(geo, {chart});
  } else if (name == "plane_disk") {
    const double r = require_positive(p, "R");
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{plane_level({0.0, 0.0, 1.0})}, 1.0);
    Chart chart({{0.0, r, false}, {0.0, 2.0 * kPi, true}},
                [](Span u, double) { return Point{u[0] * std::cos(u[1]), u[0] * std::sin(u[1]), 0.0}; },
                [](Span u, double) {
                  return std::vector<Vector>{{std::cos(u[1]), std::sin(u[1]), 0.0},
                                             {-u[0] * std::sin(u[1]), u[0] * std::cos(u[1]), 0.0}};
                },
                {{0, true}});
    finish(geo, {chart});
  } else if (name == "expanding_sphere") {
    const double r0 = require_positive(p, "R0");
    const double c = p.at("c");
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{sphere_level(3, r0, c)}, 0.5 * r0,
                                                  true);
    finish(geo, {sphere_chart([r0, c](double t) { return r0 + c * t; }, kPi, false)});
    TensorField w({3, 1}, [c](Span x, double) { return Tensor::covector(scaled(c / norm(x), x)); }, "w");
    velocity = w.with_gradient([c] {
                       return TensorField({3, 2}, [c](Span x, double) { return c * radial_hessian(x); }, "grad w");
                     })
                        .with_time_derivative([] { return constant_field(Tensor::zeros(3, 1), 3); });
  } else if (name == "translating_plane") {
    const double c = p.at("c");
    auto level = scalar_field_with_hessian(
        3, [c](Span x, double t) { return x[2] - c * t; }, [](Span, double) { return Vector{0.0, 0.0, 1.0}; },
        [](Span, double) { return Tensor(3, 2); }, "translating plane", [c](Span, double) { return -c; });
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{level}, 1.0, true);
    Chart chart({{0.0, 1.0, false}, {0.0, 2.0 * kPi, true}},
                [c](Span u, double t) { return Point{u[0] * std::cos(u[1]), u[0] * std::sin(u[1]), c * t}; },
                [](Span u, double) {
                  return std::vector<Vector>{{std::cos(u[1]), std::sin(u[1]), 0.0},
                                             {-u[0] * std::sin(u[1]), u[0] * std::cos(u[1]), 0.0}};
                },
                {{0, true}});
    finish(geo, {chart});
    velocity = constant_field(Tensor::covector({0.0, 0.0, c}), 3);
  } else if (name == "rotating_plane") {
    const double om = p.at("omega");
    auto level = scalar_field_with_hessian(
        3, [om](Span x, double t) { return x[0] * std::sin(om * t) + x[2] * std::cos(om * t); },
        [om](Span, double t) { return Vector{std::sin(om * t), 0.0, std::cos(om * t)}; },
        [](Span, double) { return Tensor(3, 2); }, "rotating plane",
        [om](Span x, double t) { return om * (x[0] * std::cos(om * t) - x[2] * std::sin(om * t)); });
    auto geo = std::make_shared<LevelSetGeometry>(name, 3, std::vector<TensorField>{level}, 1.0, true);
    Chart chart({{0.0, 1.0, false}, {0.0, 2.0 * kPi, true}},
                [om](Span u, double t) {
                  const double c = u[0] * std::cos(u[1]);
                  return Point{c * std::cos(om * t), u[0] * std::sin(u[1]), -c * std::sin(om * t)};
                },
                [om](Span u, double t) {
                  const double co = std::cos(om * t), so = std::sin(om * t);
                  const double cp = std::cos(u[1]), sp = std::sin(u[1]);
                  return std::vector<Vector>{{cp * co, sp, -cp * so}, {-u[0] * sp * co, u[0] * cp, u[0] * sp * so}};
                },
                {{0, true}});
    finish(geo, {chart});
    Tensor gw(3, 2);
    gw[0 * 3 + 2] = om;
    gw[2 * 3 + 0] = -om;
    TensorField w({3, 1}, [om](Span x, double) { return Tensor::covector({om * x[2], 0.0, -om * x[0]}); }, "w");
    velocity = w.with_gradient([gw] { return constant_field(gw, 3); })
                        .with_time_derivative([] { return constant_field(Tensor::zeros(3, 1), 3); });
  }
  return GeometryInstance{name, p, geometry, Atlas(geometry, std::move(charts), q), velocity};
}

}  // namespace xtc
