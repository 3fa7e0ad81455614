#include "bellcert/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace bellcert::relent {

namespace {

// Monic shifted-Legendre recurrence on [0,1]: alpha_k = 1/2,
// beta_k^2 = k^2 / (4 (4k^2 - 1)).
double beta_sq(int k) {
  const double kk = static_cast<double>(k) * k;
  return kk / (4.0 * (4.0 * kk - 1.0));
}

}  // namespace

QuadratureRule gauss_radau(int m, int fixed_endpoint) {
  if (m < 1) throw DomainError("gauss_radau: m must be >= 1");
  if (fixed_endpoint != 0 && fixed_endpoint != 1) {
    throw DomainError("gauss_radau: endpoint must be 0 or 1");
  }
  const double a = static_cast<double>(fixed_endpoint);

  RMat jac = RMat::Zero(m, m);
  for (int i = 0; i < m; ++i) jac(i, i) = 0.5;
  for (int i = 0; i + 1 < m; ++i) {
    const double off = std::sqrt(beta_sq(i + 1));
    jac(i, i + 1) = off;
    jac(i + 1, i) = off;
  }

  if (m == 1) {
    jac(0, 0) = a;
  } else {
    // Golub: replace the last diagonal by a + delta_{m-1}, where
    // (J_{m-1} - a I) delta = beta_{m-1}^2 e_{m-1}.
    RMat top = jac.topLeftCorner(m - 1, m - 1);
    top.diagonal().array() -= a;
    RVec rhs = RVec::Zero(m - 1);
    rhs(m - 2) = beta_sq(m - 1);
    const RVec delta = top.fullPivLu().solve(rhs);
    jac(m - 1, m - 1) = a + delta(m - 2);
  }

  Eigen::SelfAdjointEigenSolver<RMat> es(jac);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("gauss_radau: eigendecomposition failed");
  }

  QuadratureRule rule;
  rule.m = m;
  rule.fixed_endpoint = fixed_endpoint;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;  // beta_0 = 1 on [0,1]
  }
  // snap the pinned node exactly onto the endpoint
  int pin = 0;
  for (int i = 1; i < m; ++i) {
    if (std::abs(rule.nodes[i] - a) < std::abs(rule.nodes[pin] - a)) pin = i;
  }
  rule.nodes[pin] = a;
  return rule;
}

}  // namespace bellcert::relent
