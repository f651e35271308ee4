#pragma once

#include <cstddef>
#include <vector>

namespace hyperforge::oracle {

// Gauss-Hermite rule for the weight exp(-t^2) (Golub-Welsch).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per n; thread-safe.
const HermiteRule& gauss_hermite(std::size_t n);

// Nodes and weights for E[g(X)] with X ~ N(mean, variance): the weights sum
// to one.
HermiteRule normal_rule(std::size_t n, double mean, double variance);

}  // namespace hyperforge::oracle
