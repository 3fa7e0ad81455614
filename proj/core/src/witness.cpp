#include "bellcert/witness.hpp"

#include <cmath>

namespace bellcert::witness {

using quantum::BipartiteState;
using quantum::Hermitian;
using quantum::Subsystem;

EntropyWitness cvne_witness(const BipartiteState& rho) {
  const Hermitian rho_b = quantum::partial_trace(rho, Subsystem::B);
  if (rho.rho().min_eigenvalue() <= kRankTol ||
      rho_b.min_eigenvalue() <= kRankTol) {
    throw SingularStateError("cvne_witness: state is (nearly) singular");
  }
  const CMat log_ab = quantum::matrix_log2(rho.rho()).mat();
  const CMat log_b = quantum::matrix_log2(rho_b).mat();
  const CMat eye_a = CMat::Identity(rho.d_a(), rho.d_a());
  CMat w = -log_ab + quantum::kron(eye_a, log_b);
  return EntropyWitness{Hermitian(quantum::hermitize(w)), rho, 1.0};
}

bool witness_bound_check(const EntropyWitness& w, const BipartiteState& sigma,
                         double t) {
  const double val = (w.w.mat() * sigma.rho().mat()).trace().real();
  return val <= t;
}

EntropyWitness regularized_witness(const BipartiteState& rho, double h) {
  const int n = rho.dim();
  const CMat id_mixed = CMat::Identity(n, n) / double(n);

  auto mix = [&](double c) {
    CMat m = c * rho.rho().mat() + (1.0 - c) * id_mixed;
    return BipartiteState(Hermitian(m), rho.d_a(), rho.d_b());
  };

  if (quantum::cvne_exact(rho) >= h) {
    throw NoBracketingError("regularized_witness: cvne_exact(rho) >= H");
  }
  // invariant: cvne(mix(lo)) >= H > cvne(mix(hi))
  double lo = 0.0, hi = 1.0;
  double s_hi = quantum::cvne_exact(rho);
  constexpr int kMaxIters = 200;
  constexpr double kWidthTol = 1e-15;
  for (int it = 0; it < kMaxIters && !(s_hi >= h - 1e-9 && s_hi < h); ++it) {
    if (hi - lo < kWidthTol) break;
    const double mid = 0.5 * (lo + hi);
    const double s_mid = quantum::cvne_exact(mix(mid));
    if (s_mid < h) {
      hi = mid;
      s_hi = s_mid;
    } else {
      lo = mid;
    }
  }
  if (!(s_hi < h)) {
    throw NoBracketingError("regularized_witness: bisection lost its bracket");
  }
  const BipartiteState target = mix(hi);
  EntropyWitness w = cvne_witness(target);
  w.mixing_c = hi;
  return w;
}

}  // namespace bellcert::witness
