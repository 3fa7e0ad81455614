#pragma once

#include "bellcert/quantum.hpp"
#include "bellcert/types.hpp"

namespace bellcert::witness {

/// Linear CVNE witness W = -log2(rho_AB) + I_A (x) log2(rho_B) together with
/// the state it was built from and the mixing weight used for
/// regularization (1 when unregularized).
struct EntropyWitness {
  quantum::Hermitian w;
  quantum::BipartiteState source_state;
  double mixing_c = 1.0;
};

/// Rank threshold below which cvne_witness refuses to take logarithms.
constexpr double kRankTol = 1e-10;

/// Witness of a full-rank state. Throws SingularStateError when rho or its
/// B-marginal has an eigenvalue below the rank threshold.
EntropyWitness cvne_witness(const quantum::BipartiteState& rho);

/// Tr(w sigma) <= T. When true (and the witness comes from a negative-CVNE
/// state with T < 0) this certifies cvne_exact(sigma) <= T.
bool witness_bound_check(const EntropyWitness& w,
                         const quantum::BipartiteState& sigma, double t);

/// Bisection over c on the mixture c*rho + (1-c)*I/(dA*dB) until the
/// mixture's CVNE lies in [H - 1e-9, H); returns the witness of the mixture.
/// Throws NoBracketingError when cvne_exact(rho) >= H.
EntropyWitness regularized_witness(const quantum::BipartiteState& rho, double h);

}  // namespace bellcert::witness
