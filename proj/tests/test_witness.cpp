#include <doctest.h>

#include <cmath>

#include "bellcert/rng.hpp"
#include "bellcert/witness.hpp"

using namespace bellcert;
using namespace bellcert::witness;
using quantum::BipartiteState;
using quantum::Hermitian;

namespace {

double trace_with(const EntropyWitness& w, const BipartiteState& sigma) {
  return (w.w.mat() * sigma.rho().mat()).trace().real();
}

}  // namespace

TEST_CASE("witness of the maximally mixed state is the identity") {
  const BipartiteState mixed(Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  const EntropyWitness w = cvne_witness(mixed);
  // W = 2 I - I_2 (x) I_2 = I
  CHECK((w.w.mat() - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(trace_with(w, mixed) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.mixing_c == 1.0);
}

TEST_CASE("witness identity Tr(W rho) = cvne_exact(rho)") {
  CHECK(trace_with(cvne_witness(quantum::werner_state(0.9)),
                   quantum::werner_state(0.9)) ==
        doctest::Approx(quantum::werner_cvne(0.9)).epsilon(1e-7));

  Rng rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    const BipartiteState st = quantum::ginibre_state(2, 2, rng);
    const EntropyWitness w = cvne_witness(st);
    CHECK(trace_with(w, st) ==
          doctest::Approx(quantum::cvne_exact(st)).epsilon(1e-7));
  }
}

TEST_CASE("pure entangled states are rejected as singular") {
  CHECK_THROWS_AS(cvne_witness(quantum::noisy_max_entangled(1.0, 2)),
                  SingularStateError);
}

TEST_CASE("separation soundness and the supporting-linearization side") {
  Rng rng(43);
  int triggered = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    // witness from a negative-CVNE state
    const double p = rng.uniform(0.76, 0.999);
    const BipartiteState source = quantum::werner_state(p);
    const EntropyWitness w = cvne_witness(source);
    const double t = quantum::cvne_exact(source) + rng.uniform(0.0, 0.1);
    if (t >= 0.0) continue;

    // sigma biased toward the source so the check sometimes triggers
    const double alpha = rng.uniform();
    const CMat noise = quantum::ginibre_state(2, 2, rng).rho().mat();
    const CMat mix = alpha * source.rho().mat() + (1.0 - alpha) * noise;
    const BipartiteState sigma(Hermitian(quantum::hermitize(mix)), 2, 2);

    const double s_exact = quantum::cvne_exact(sigma);
    // supporting linearization of the concave CVNE at the source state
    CHECK(trace_with(w, sigma) >= s_exact - 1e-7);
    if (witness_bound_check(w, sigma, t)) {
      ++triggered;
      CHECK(s_exact <= t + 1e-7);
    }
  }
  CHECK(triggered > 20);  // the ensemble must exercise the implication
}

TEST_CASE("regularized witness lands in the prescribed entropy window") {
  const BipartiteState phi = quantum::noisy_max_entangled(1.0, 2);
  const EntropyWitness w = regularized_witness(phi, -0.5);
  const double s = quantum::cvne_exact(w.source_state);
  CHECK(s < -0.5);
  CHECK(s >= -0.5 - 1e-9);
  CHECK(w.mixing_c > 0.0);
  CHECK(w.mixing_c < 1.0);
  CHECK(trace_with(w, w.source_state) == doctest::Approx(s).epsilon(1e-7));
}

TEST_CASE("regularized witness agrees with the scalar Werner root") {
  // mixing Werner(p = 1) with I/4 stays in the Werner family:
  // c rho_wer(1) + (1-c) I/4 = rho_wer(c)
  const BipartiteState pure_wer = quantum::werner_state(1.0);
  const double h = -0.9;
  const EntropyWitness w = regularized_witness(pure_wer, h);

  double lo = 0.747, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (quantum::werner_cvne(mid) > h ? lo : hi) = mid;
  }
  CHECK(w.mixing_c == doctest::Approx(hi).epsilon(1e-6));
}

TEST_CASE("no bracketing when the state already satisfies the target") {
  const BipartiteState mixed(Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  CHECK_THROWS_AS(regularized_witness(mixed, -0.5), NoBracketingError);

  // boundary case: cvne exactly equals H
  const BipartiteState phi = quantum::noisy_max_entangled(1.0, 2);
  CHECK_THROWS_AS(regularized_witness(phi, quantum::cvne_exact(phi)),
                  NoBracketingError);
}

TEST_CASE("witness_bound_check basic directions") {
  const BipartiteState source = quantum::werner_state(0.95);
  const EntropyWitness w = cvne_witness(source);
  const double s = quantum::cvne_exact(source);
  REQUIRE(s < -0.4);
  CHECK(witness_bound_check(w, source, s + 1e-9));
  const BipartiteState mixed(Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  CHECK_FALSE(witness_bound_check(w, mixed, -0.1));
}
