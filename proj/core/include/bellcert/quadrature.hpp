#pragma once

#include <vector>

#include "bellcert/types.hpp"

namespace bellcert::relent {

/// Gauss-Radau rule on [0, 1] with one node pinned at an endpoint:
/// sum_j w_j p(t_j) = integral of p for all polynomials of degree <= 2m-2.
struct QuadratureRule {
  int m = 0;
  int fixed_endpoint = 1;  // 0 or 1
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Modified-Jacobi-matrix construction (shifted Legendre recurrence with the
/// last diagonal adjusted so the prescribed endpoint is a node).
QuadratureRule gauss_radau(int m, int fixed_endpoint);

}  // namespace bellcert::relent
