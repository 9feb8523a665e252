#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtc/atlas.hpp"
#include "xtc/geometry.hpp"

namespace xtc {

using GeometryParams = std::map<std::string, double>;

// A built-in geometry with its quadrature atlas and, for moving geometries,
// the material velocity that transports it.
struct GeometryInstance {
  std::string name;
  GeometryParams params;
  GeometryPtr geometry;
  Atlas atlas;
  std::optional<TensorField> velocity;

  double param(const std::string& key) const { return params.at(key); }
};

struct GeometryInfo {
  std::string name;
  std::string description;
  GeometryParams defaults;
};

const std::vector<GeometryInfo>& geometry_catalog();

GeometryInstance make_geometry(const std::string& name, const GeometryParams& params = {},
                               QuadratureSettings quadrature = {});

// Parses "k=v,k=v" into a parameter map.
GeometryParams parse_geometry_params(const std::string& text);

// Scalar field with exact gradient and Hessian supplied as callbacks.
TensorField scalar_field_with_hessian(int dim, std::function<double(std::span<const double>, double)> value,
                                      std::function<Vector(std::span<const double>, double)> gradient,
                                      std::function<Tensor(std::span<const double>, double)> hessian,
                                      std::string label,
                                      std::function<double(std::span<const double>, double)> time_rate = {});

}  // namespace xtc
