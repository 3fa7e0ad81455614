#pragma once

#include <utility>
#include <vector>

#include "bellcert/quadrature.hpp"
#include "bellcert/quantum.hpp"
#include "bellcert/sdp.hpp"

namespace bellcert::relent {

/// Direction and resolution of the CVNE semidefinite approximation:
/// apx = -1 under-approximates (quadrature pinned at t = 1),
/// apx = +1 over-approximates (pinned at t = 0);
/// m quadrature nodes, k square-root halving steps.
struct CvneApproxConfig {
  int m = 3;
  int k = 3;
  int apx = -1;

  CvneApproxConfig() = default;
  CvneApproxConfig(int m_, int k_, int apx_) : m(m_), k(k_), apx(apx_) {
    if (m < 1 || k < 0 || (apx != -1 && apx != 1)) {
      throw DomainError("CvneApproxConfig: need m >= 1, k >= 0, apx = +-1");
    }
  }

  int endpoint() const { return apx < 0 ? 1 : 0; }
};

/// Scalar bound on ln(x): 2^k sum_j w_j f_{t_j}(x^(1/2^k)) with
/// f_t(z) = (z - 1) / (t (z - 1) + 1). A lower bound of ln(x) for apx = -1
/// and an upper bound for apx = +1. Natural-log scale.
double scalar_log_bound(double x, const CvneApproxConfig& cfg);

/// Scalar perspective 2^k * lambda * f_t((mu/lambda)^(1/2^k)) with the
/// boundary limits filled in; the building block of both the fixed-state
/// evaluator and the sandwich oracles.
double perspective_term(double lambda, double mu, double t, int k);

/// Quadrature approximation of the conditional entropy of a fixed state,
/// in bits, evaluated spectrally (no SDP). Equals the optimum the LMI
/// construction attains when the state is held fixed.
double cvne_quadrature_value(const quantum::BipartiteState& state,
                             const CvneApproxConfig& cfg);

/// Linear form sum_j coeff_j * tau_j whose achievable maximum equals the
/// quadrature approximation of ln(2) * S(A|B) for the declared density
/// variable.
struct CvneSurrogate {
  std::vector<std::pair<sdp::VarHandle, double>> tau_terms;
};

/// Appends the hypograph construction for the CVNE approximation of a
/// declared density variable: a lift to the commuting pair
/// A = rho (x) I_n and B = I_n (x) (I_A (x) rho_B)^T on dimension n^2,
/// compressed with e = vec(I_n); k geometric-mean halving steps
/// [[A, Z_i], [Z_i, Z_{i-1}]] >= 0; and per quadrature node the
/// Schur-complement block of the perspective
/// P_{f_t}(A, B) = (1/t) A - (1/t^2) A (B + (1/t - 1) A)^{-1} A.
/// Returns the linear form whose achievable maximum is ln(2) * S_apx(rho).
CvneSurrogate append_cvne_surrogate(sdp::SdpProblem& p, sdp::VarHandle rho,
                                    int d_a, int d_b,
                                    const CvneApproxConfig& cfg);

/// S_apx(rho) >= H (H in bits): the surrogate constrained against ln(2) * H.
void append_cvne_constraint(sdp::SdpProblem& p, sdp::VarHandle rho, int d_a,
                            int d_b, double h, const CvneApproxConfig& cfg);

}  // namespace bellcert::relent
