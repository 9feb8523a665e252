#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace xtc {

class DegenerateGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A finite-difference stencil left the domain of the field being sampled.
class StencilError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite evaluator output or a derivative request that nests too deeply.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string format_point(std::span<const double> x, double t);

}  // namespace xtc
