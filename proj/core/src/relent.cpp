#include "bellcert/relent.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include <Eigen/Eigenvalues>

namespace bellcert::relent {

namespace {

constexpr double kLn2 = 0.6931471805599453;

CMat lift_left(const CMat& e, int n) {
  return quantum::kron(e, CMat::Identity(n, n));
}

// I_n (x) (I_A (x) Tr_A(e))^T
CMat lift_right(const CMat& e, int d_a, int d_b) {
  const int n = d_a * d_b;
  const CMat eb = quantum::partial_trace(e, d_a, d_b, quantum::Subsystem::B);
  const CMat y = quantum::kron(CMat::Identity(d_a, d_a), eb);
  return quantum::kron(CMat::Identity(n, n), y.transpose());
}

CVec vec_identity(int n) {
  CVec e = CVec::Zero(n * n);
  for (int i = 0; i < n; ++i) e(i * n + i) = 1.0;
  return e;
}

}  // namespace

double perspective_term(double lambda, double mu, double t, int k) {
  const double pow2k = std::ldexp(1.0, k);
  if (lambda <= 0.0) {
    return (t == 0.0 && k == 0) ? std::max(mu, 0.0) : 0.0;
  }
  if (mu < 0.0) mu = 0.0;
  const double y = std::pow(mu / lambda, 1.0 / pow2k);
  if (t == 0.0) return pow2k * lambda * (y - 1.0);
  if (t == 1.0) {
    if (y <= 0.0) return -std::numeric_limits<double>::infinity();
    return pow2k * lambda * (1.0 - 1.0 / y);
  }
  return pow2k * lambda * (y - 1.0) / (t * (y - 1.0) + 1.0);
}

double scalar_log_bound(double x, const CvneApproxConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("scalar_log_bound: x must be positive");
  const QuadratureRule rule = gauss_radau(cfg.m, cfg.endpoint());
  double sum = 0.0;
  for (int j = 0; j < rule.m; ++j) {
    sum += rule.weights[j] * perspective_term(1.0, x, rule.nodes[j], cfg.k);
  }
  return sum;
}

double cvne_quadrature_value(const quantum::BipartiteState& state,
                             const CvneApproxConfig& cfg) {
  const int d_a = state.d_a();
  const int d_b = state.d_b();
  const CMat rho = state.rho().mat();
  const CMat rho_b =
      quantum::partial_trace(rho, d_a, d_b, quantum::Subsystem::B);
  const CMat y = quantum::kron(CMat::Identity(d_a, d_a), rho_b);

  Eigen::SelfAdjointEigenSolver<CMat> es_r(rho);
  Eigen::SelfAdjointEigenSolver<CMat> es_y(y);
  const RVec lam = es_r.eigenvalues().cwiseMax(0.0);
  const RVec mu = es_y.eigenvalues().cwiseMax(0.0);
  const CMat overlap = es_y.eigenvectors().adjoint() * es_r.eigenvectors();

  const QuadratureRule rule = gauss_radau(cfg.m, cfg.endpoint());
  double nats = 0.0;
  for (int q = 0; q < mu.size(); ++q) {
    for (int p = 0; p < lam.size(); ++p) {
      const double c = std::norm(overlap(q, p));
      if (c < 1e-15) continue;
      double term = 0.0;
      for (int j = 0; j < rule.m; ++j) {
        term += rule.weights[j] *
                perspective_term(lam(p), mu(q), rule.nodes[j], cfg.k);
      }
      nats += c * term;
    }
  }
  return nats / kLn2;
}

CvneSurrogate append_cvne_surrogate(sdp::SdpProblem& p, sdp::VarHandle rho,
                                    int d_a, int d_b,
                                    const CvneApproxConfig& cfg) {
  const int n = d_a * d_b;
  const int n2 = n * n;
  if (p.var_dim(rho) != n) {
    throw ModelError("append_cvne_surrogate: density variable dim mismatch");
  }
  const bool real_only = p.variables()[rho.id].real_only;
  const QuadratureRule rule = gauss_radau(cfg.m, cfg.endpoint());
  const double pow2k = std::ldexp(1.0, cfg.k);
  const CVec e = vec_identity(n);

  // k geometric-mean halving steps: [[A, Z_i], [Z_i, Z_{i-1}]] >= 0
  std::vector<sdp::VarHandle> zs;
  for (int i = 0; i < cfg.k; ++i) {
    sdp::VarHandle z = p.add_hermitian_variable(
        "Z" + std::to_string(i + 1) + "_" + std::to_string(rho.id), n2,
        real_only);
    const int blk = p.add_lmi_block(2 * n2);
    const bool first = (i == 0);
    p.block_add_linear(blk, rho, [n, d_a, d_b, n2, first](const CMat& em) {
      CMat m = CMat::Zero(2 * n2, 2 * n2);
      m.topLeftCorner(n2, n2) = lift_left(em, n);
      if (first) m.bottomRightCorner(n2, n2) = lift_right(em, d_a, d_b);
      return m;
    });
    if (!first) p.block_place(blk, zs.back(), n2, n2, 1.0);
    p.block_place(blk, z, 0, n2, 1.0);
    zs.push_back(z);
  }
  const sdp::VarHandle z_last = zs.empty() ? sdp::VarHandle{} : zs.back();

  CvneSurrogate surrogate;
  for (int j = 0; j < rule.m; ++j) {
    const double t = rule.nodes[j];
    if (rule.weights[j] < 1e-14) {
      std::cerr << "append_cvne_surrogate: dropping degenerate node t = " << t
                << " (weight " << rule.weights[j] << ")\n";
      continue;
    }
    sdp::VarHandle tau =
        p.add_hermitian_variable("tau" + std::to_string(j) + "_" +
                                     std::to_string(rho.id),
                                 1, true);
    surrogate.tau_terms.emplace_back(tau, pow2k * rule.weights[j]);

    if (t == 0.0) {
      // P_{f_0}(A, B) = B - A compressed with e is affine
      std::vector<std::pair<sdp::VarHandle, CMat>> terms;
      if (cfg.k == 0) {
        terms.emplace_back(rho, (double(d_a) - 1.0) * CMat::Identity(n, n));
      } else {
        terms.emplace_back(z_last, CMat(e * e.adjoint()));
        terms.emplace_back(rho, -CMat::Identity(n, n));
      }
      terms.emplace_back(tau, -CMat::Identity(1, 1));
      p.add_scalar_inequality(terms, 0.0);
      continue;
    }

    // [[ (1/t) e'Ae - tau, (1/t)(Ae)' ], [ (1/t)Ae, B + (1/t - 1)A ]] >= 0
    const int blk = p.add_lmi_block(n2 + 1);
    const double it = 1.0 / t;
    p.block_place(blk, tau, 0, 0, -1.0);
    const bool chain = cfg.k > 0;
    p.block_add_linear(blk, rho,
                       [n, d_a, d_b, n2, it, chain](const CMat& em) {
      CMat m = CMat::Zero(n2 + 1, n2 + 1);
      m(0, 0) = it * em.trace();
      // (A e)_r = row-major flattening of the matrix
      for (int i = 0; i < n; ++i) {
        for (int i2 = 0; i2 < n; ++i2) {
          const Cplx v = em(i, i2);
          if (v == Cplx(0, 0)) continue;
          const int r = i * n + i2;
          m(1 + r, 0) = it * v;
          m(0, 1 + r) = it * std::conj(v);
        }
      }
      m.bottomRightCorner(n2, n2) = (it - 1.0) * lift_left(em, n);
      if (!chain) m.bottomRightCorner(n2, n2) += lift_right(em, d_a, d_b);
      return m;
    });
    if (chain) p.block_place(blk, z_last, 1, 1, 1.0);
  }
  return surrogate;
}

void append_cvne_constraint(sdp::SdpProblem& p, sdp::VarHandle rho, int d_a,
                            int d_b, double h, const CvneApproxConfig& cfg) {
  const double bound = std::log2(double(d_a));
  if (h < -bound - 1e-12 || h > bound + 1e-12) {
    throw DomainError("append_cvne_constraint: H outside [-log2 dA, log2 dA]");
  }
  const CvneSurrogate s = append_cvne_surrogate(p, rho, d_a, d_b, cfg);
  std::vector<std::pair<sdp::VarHandle, CMat>> terms;
  for (const auto& [tau, coeff] : s.tau_terms) {
    terms.emplace_back(tau, coeff * CMat::Identity(1, 1));
  }
  p.add_scalar_inequality(terms, -kLn2 * h);
}

}  // namespace bellcert::relent
