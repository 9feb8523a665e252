#pragma once

#include <span>
#include <vector>

#include "xtc/tensor.hpp"

namespace xtc {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with the given number of points on [-1, 1].
const GaussRule& gauss_legendre(int points);

// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);
Tensor pairwise_sum(std::span<const Tensor> values);

}  // namespace xtc
