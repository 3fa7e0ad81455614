#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "bellcert/certify.hpp"
#include "bellcert/rng.hpp"

using namespace bellcert;
using namespace bellcert::certify;
using bell::BellSpec;

namespace {

const relent::CvneApproxConfig kUp(3, 3, +1);
const relent::CvneApproxConfig kDown(3, 3, -1);

double state_bell_value(const CertificationResult& r, const BellSpec& spec) {
  const auto b =
      bell::bell_operator_matrix(spec, r.alice_povms, r.bob_povms);
  return (b.mat() * r.extremal_state->rho().mat()).trace().real();
}

}  // namespace

TEST_CASE("method 2 reproduces the CHSH thresholds") {
  const BellSpec chsh = bell::builtin_spec("chsh");
  const CertificationResult r0 = method2_fixed_measurements(chsh, 0.0, kUp);
  REQUIRE(r0.ok());
  CHECK(r0.omega == doctest::Approx(2.2060).epsilon(5e-4));
  CHECK(state_bell_value(r0, chsh) == doctest::Approx(r0.omega).epsilon(1e-6));
  // the optimizer state sits on the entropy boundary
  CHECK(quantum::cvne_exact(*r0.extremal_state) ==
        doctest::Approx(0.0).epsilon(2e-3));

  const CertificationResult r9 = method2_fixed_measurements(chsh, -0.9, kUp);
  REQUIRE(r9.ok());
  CHECK(r9.omega == doctest::Approx(2.7967).epsilon(5e-4));
}

TEST_CASE("method 2 apx brackets and monotonicity in H") {
  const BellSpec chsh = bell::builtin_spec("chsh");
  double prev = 0.0;
  for (double h : {0.0, -0.25, -0.5, -0.75}) {
    const double up = method2_fixed_measurements(chsh, h, kUp).omega;
    const double dn = method2_fixed_measurements(chsh, h, kDown).omega;
    CHECK(up >= dn - 1e-6);          // relaxation vs restriction
    CHECK(up - dn < 1e-3);           // tight sandwich at m = k = 3
    CHECK(up >= prev - 1e-7);        // omega grows as H decreases
    prev = up;
  }
}

TEST_CASE("method 1 agrees with method 2 and satisfies its contract") {
  const BellSpec chsh = bell::builtin_spec("chsh");
  const CertificationResult m1 = method1_witness_iteration(chsh, 0.0);
  REQUIRE(m1.status == CertificationResult::Status::Converged);
  CHECK(m1.method == 1);
  const double m2 = method2_fixed_measurements(chsh, 0.0, kUp).omega;
  CHECK(m1.omega == doctest::Approx(m2).epsilon(1e-4));
  // termination criterion: the optimizer reached the target entropy
  CHECK(quantum::cvne_exact(*m1.extremal_state) ==
        doctest::Approx(0.0).epsilon(1e-5));

  const CertificationResult bc3 = method1_witness_iteration(
      bell::builtin_spec("bc3"), -0.9);
  REQUIRE(bc3.status == CertificationResult::Status::Converged);
  CHECK(bc3.omega == doctest::Approx(5.1379).epsilon(5e-4));
}

TEST_CASE("method 1 handles a slack entropy constraint") {
  // H below the entropy of the unconstrained maximizer: one iteration,
  // omega = Tsirelson bound
  const BellSpec chsh = bell::builtin_spec("chsh");
  const CertificationResult r = method1_witness_iteration(chsh, -0.999999);
  REQUIRE(r.ok());
  CHECK(r.omega == doctest::Approx(chsh.tsirelson_bound).epsilon(1e-5));
}

TEST_CASE("tsirelson_check: fixed angles hit the closed forms") {
  for (const char* name : {"chsh", "mchsh", "bc3", "i1"}) {
    const BellSpec spec = bell::builtin_spec(name);
    CHECK(tsirelson_check(spec) ==
          doctest::Approx(spec.tsirelson_bound).epsilon(1e-6));
  }
}

TEST_CASE("measurement step matches the spectral oracle") {
  // optimum of the Bell objective over one party's POVMs is
  // sum_i |eig(K_i)|_1 with K_i the conditional operators
  const BellSpec spec = bell::builtin_spec("chsh");
  Rng rng(33);
  const auto state = quantum::ginibre_state(2, 2, rng);
  auto alice = bell::povms_from_angles(spec.alice_angles);
  const auto bob = bell::povms_from_angles(spec.bob_angles);

  auto [updated, value] =
      optimize_measurements(spec, state, alice, bob, true, {});

  double oracle = 0.0;
  const CMat eye = CMat::Identity(2, 2);
  for (int i = 0; i < spec.m_a; ++i) {
    CMat k = CMat::Zero(2, 2);
    for (int j = 0; j < spec.m_b; ++j) {
      const CMat obs = bell::observable(bob[j]).mat();
      k += spec.coeffs(i, j) *
           quantum::partial_trace(quantum::kron(eye, obs) * state.rho().mat(),
                                  2, 2, quantum::Subsystem::A);
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(quantum::hermitize(k));
    oracle += es.eigenvalues().cwiseAbs().sum();
  }
  CHECK(value == doctest::Approx(oracle).epsilon(1e-6));
  for (const auto& p : updated) {
    CHECK(p.elements[0].min_eigenvalue() > -1e-9);
    CHECK((p.elements[0].mat() + p.elements[1].mat() - eye)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("seeded see-saw dominates method 2 and recovers the MCHSH gap") {
  const BellSpec mchsh = bell::builtin_spec("mchsh");
  const double m2 = method2_fixed_measurements(mchsh, 0.0, kUp).omega;
  const CertificationResult r = seeded_seesaw(mchsh, 0.0, kUp, 1e-6, 40);
  REQUIRE(r.ok());
  CHECK(r.omega >= m2 - 1e-6);
  CHECK(r.omega - m2 > 1e-3);  // arbitrary measurements strictly help here
  CHECK(r.omega == doctest::Approx(3.0773).epsilon(5e-4));
  CHECK(state_bell_value(r, mchsh) == doctest::Approx(r.omega).epsilon(1e-5));
  // extremal state respects the entropy constraint within the
  // approximation allowance
  CHECK(quantum::cvne_exact(*r.extremal_state) >= 0.0 - 2e-3);
}

TEST_CASE("method 3 with random restarts stays consistent on CHSH") {
  const BellSpec chsh = bell::builtin_spec("chsh");
  SeesawConfig ss;
  ss.restarts = 1;
  ss.seed = 5;
  ss.cycle_tol = 1e-6;
  ss.max_cycles = 40;
  const CertificationResult r = method3_seesaw(chsh, -0.5, kUp, ss, 2);
  REQUIRE(r.ok());
  const double m2 = method2_fixed_measurements(chsh, -0.5, kUp).omega;
  CHECK(r.omega >= m2 - 1e-6);   // see-saw dominance
  CHECK(r.omega <= m2 + 5e-3);   // fixed and arbitrary coincide for CHSH
  CHECK(r.method == 3);
}

TEST_CASE("idelta see-saw reaches the closed-form Tsirelson bound") {
  const BellSpec spec = bell::idelta_spec(M_PI / 6.0);
  SeesawConfig ss;
  ss.restarts = 3;
  ss.seed = 2;
  ss.cycle_tol = 1e-9;
  ss.max_cycles = 200;
  const double val = tsirelson_check(spec, ss);
  CHECK(val == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-4 / 5.2));
}

TEST_CASE("curve inversion: monotone interpolation with markers") {
  const std::vector<std::pair<double, double>> curve = {
      {0.0, 2.2}, {-0.5, 2.5}, {-1.0, 2.8}};
  CHECK_FALSE(invert_omega_curve(curve, 2.1).has_value());
  CHECK(*invert_omega_curve(curve, 2.2) == doctest::Approx(0.0));
  CHECK(*invert_omega_curve(curve, 2.35) == doctest::Approx(-0.25));
  CHECK(*invert_omega_curve(curve, 2.8) == doctest::Approx(-1.0));
  CHECK(*invert_omega_curve(curve, 3.0) == doctest::Approx(-1.0));
}

TEST_CASE("visibility curve (method 2, qubits) hits the reference points") {
  const BellSpec chsh = bell::builtin_spec("chsh");
  SeesawConfig ss;  // unused on the qubit path
  const auto pts = visibility_curve(chsh, 2, {0.5, 0.9888, 1.0}, kUp, ss, 2);
  REQUIRE(pts.size() == 3);
  // below the classical threshold: no certification
  CHECK_FALSE(pts[0].certified);
  CHECK(pts[0].h_bound == doctest::Approx(1.0));
  // the Table-I visibility certifies about -0.9
  CHECK(pts[1].certified);
  CHECK(pts[1].h_bound == doctest::Approx(-0.9).epsilon(2e-3));
  // full visibility certifies -1 within the approximation gap
  CHECK(pts[2].certified);
  CHECK(pts[2].h_bound == doctest::Approx(-1.0).epsilon(2e-3));
}

TEST_CASE("sanitize_state projects solver output onto density matrices") {
  CMat m(4, 4);
  m.setZero();
  m(0, 0) = 0.6;
  m(1, 1) = 0.5;
  m(2, 2) = -1e-7;  // slightly negative eigenvalue
  m(3, 3) = 0.0;
  m(0, 1) = Cplx(0.1, 1e-9);
  m(1, 0) = Cplx(0.1, -2e-9);  // slight asymmetry
  const auto st = sanitize_state(m, 2, 2);
  CHECK(st.rho().mat().trace().real() == doctest::Approx(1.0));
  CHECK(st.rho().min_eigenvalue() >= -1e-12);
}
