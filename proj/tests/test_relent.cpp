#include <doctest.h>

#include <cmath>

#include "bellcert/quadrature.hpp"
#include "bellcert/relent.hpp"
#include "bellcert/rng.hpp"
#include "bellcert/sdp.hpp"

using namespace bellcert;
using namespace bellcert::relent;

namespace {

constexpr double kLn2 = 0.6931471805599453;

double moment(const QuadratureRule& rule, int r) {
  double s = 0.0;
  for (int j = 0; j < rule.m; ++j) {
    s += rule.weights[j] * std::pow(rule.nodes[j], r);
  }
  return s;
}

// maximize the surrogate for a FIXED density matrix through the SDP path
double sdp_cvne_apx(const quantum::BipartiteState& st,
                    const CvneApproxConfig& cfg) {
  sdp::SdpProblem p;
  p.set_sense(sdp::Sense::Maximize);
  const int n = st.dim();
  const bool real = st.rho().is_real(1e-13);
  sdp::VarHandle rho = p.add_hermitian_variable("rho", n, real);
  // pin the variable to the state entrywise
  for (int a = 0; a < n; ++a) {
    CMat e = CMat::Zero(n, n);
    e(a, a) = 1.0;
    p.add_equality({{rho, e}}, st.rho().mat()(a, a).real());
    for (int b = a + 1; b < n; ++b) {
      CMat er = CMat::Zero(n, n);
      er(a, b) = 1.0;
      er(b, a) = 1.0;
      p.add_equality({{rho, er}}, 2.0 * st.rho().mat()(a, b).real());
      if (!real) {
        CMat ei = CMat::Zero(n, n);
        ei(a, b) = Cplx(0, 1);
        ei(b, a) = Cplx(0, -1);
        p.add_equality({{rho, ei}}, 2.0 * st.rho().mat()(a, b).imag());
      }
    }
  }
  const CvneSurrogate s =
      append_cvne_surrogate(p, rho, st.d_a(), st.d_b(), cfg);
  for (const auto& [tau, coeff] : s.tau_terms) {
    p.add_objective(tau, coeff * CMat::Identity(1, 1));
  }
  const auto sol = sdp::solve(p);
  REQUIRE(sol.ok());
  return sol.objective_value / kLn2;
}

}  // namespace

TEST_CASE("gauss-radau closed forms") {
  const QuadratureRule r1 = gauss_radau(1, 1);
  REQUIRE(r1.m == 1);
  CHECK(r1.nodes[0] == 1.0);
  CHECK(r1.weights[0] == doctest::Approx(1.0));

  const QuadratureRule r10 = gauss_radau(1, 0);
  CHECK(r10.nodes[0] == 0.0);
  CHECK(r10.weights[0] == doctest::Approx(1.0));

  // m = 2, endpoint 1: nodes {1/3, 1}, weights {3/4, 1/4}
  const QuadratureRule r2 = gauss_radau(2, 1);
  CHECK(r2.nodes[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r2.nodes[1] == 1.0);
  CHECK(r2.weights[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r2.weights[1] == doctest::Approx(0.25).epsilon(1e-12));

  // mirrored rule for endpoint 0
  const QuadratureRule r20 = gauss_radau(2, 0);
  CHECK(r20.nodes[0] == 0.0);
  CHECK(r20.nodes[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r20.weights[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("gauss-radau rules satisfy the moment conditions") {
  for (int endpoint : {0, 1}) {
    for (int m = 1; m <= 6; ++m) {
      const QuadratureRule rule = gauss_radau(m, endpoint);
      CHECK(moment(rule, 0) == doctest::Approx(1.0).epsilon(1e-12));
      for (int r = 0; r <= 2 * m - 2; ++r) {
        CHECK(moment(rule, r) ==
              doctest::Approx(1.0 / (r + 1)).epsilon(1e-10));
      }
      bool has_endpoint = false;
      for (double t : rule.nodes) {
        has_endpoint = has_endpoint || t == double(endpoint);
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
      }
      CHECK(has_endpoint);
      for (double w : rule.weights) CHECK(w > 0.0);
    }
  }
}

TEST_CASE("scalar bounds: m = 1 closed forms") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 31.0}) {
    CHECK(scalar_log_bound(x, CvneApproxConfig(1, 0, -1)) ==
          doctest::Approx(1.0 - 1.0 / x).epsilon(1e-12));
    CHECK(scalar_log_bound(x, CvneApproxConfig(1, 0, +1)) ==
          doctest::Approx(x - 1.0).epsilon(1e-12));
  }
  CHECK(scalar_log_bound(1.0, CvneApproxConfig(3, 3, -1)) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(scalar_log_bound(0.0, CvneApproxConfig(1, 0, -1)),
                  DomainError);
}

TEST_CASE("scalar bounds bracket the logarithm on a wide grid") {
  for (int m = 1; m <= 5; ++m) {
    for (int k = 0; k <= 3; ++k) {
      for (double x = 1e-3; x <= 1e3; x *= 2.7) {
        const double lo = scalar_log_bound(x, CvneApproxConfig(m, k, -1));
        const double hi = scalar_log_bound(x, CvneApproxConfig(m, k, +1));
        const double ln = std::log(x);
        CHECK(lo <= ln + 1e-12);
        CHECK(hi >= ln - 1e-12);
      }
    }
  }
}

TEST_CASE("scalar bounds tighten monotonically in m and k") {
  for (double x : {0.02, 0.4, 3.0, 250.0}) {
    const double ln = std::log(x);
    double prev_lo = -1e300, prev_hi = 1e300;
    for (int m = 1; m <= 4; ++m) {
      const double lo = scalar_log_bound(x, CvneApproxConfig(m, 2, -1));
      const double hi = scalar_log_bound(x, CvneApproxConfig(m, 2, +1));
      CHECK(lo >= prev_lo - 1e-11);
      CHECK(hi <= prev_hi + 1e-11);
      prev_lo = lo;
      prev_hi = hi;
      (void)ln;
    }
    prev_lo = -1e300;
    prev_hi = 1e300;
    for (int k = 0; k <= 3; ++k) {
      const double lo = scalar_log_bound(x, CvneApproxConfig(2, k, -1));
      const double hi = scalar_log_bound(x, CvneApproxConfig(2, k, +1));
      CHECK(lo >= prev_lo - 1e-11);
      CHECK(hi <= prev_hi + 1e-11);
      prev_lo = lo;
      prev_hi = hi;
    }
  }
}

TEST_CASE("fixed-state quadrature value: maximally mixed reference") {
  // flat spectrum (ratio 2 everywhere): CVNE = 1, approximation error ~1e-9
  const quantum::BipartiteState mixed(
      quantum::Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  for (int apx : {-1, +1}) {
    CHECK(cvne_quadrature_value(mixed, CvneApproxConfig(3, 3, apx)) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("quadrature sandwich on random two-qubit states") {
  Rng rng(51);
  double max_gap = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto st = quantum::ginibre_state(2, 2, rng);
    const double exact = quantum::cvne_exact(st);
    const double lo = cvne_quadrature_value(st, CvneApproxConfig(3, 3, -1));
    const double hi = cvne_quadrature_value(st, CvneApproxConfig(3, 3, +1));
    CHECK(lo <= exact + 1e-9);
    CHECK(exact <= hi + 1e-9);
    max_gap = std::max(max_gap, hi - lo);
  }
  CHECK(max_gap < 1e-3);
}

TEST_CASE("sandwich gap shrinks monotonically in m and k") {
  Rng rng(52);
  for (int rep = 0; rep < 10; ++rep) {
    const auto st = quantum::ginibre_state(2, 2, rng);
    double prev = 1e300;
    for (int m : {1, 2, 3}) {
      const double gap =
          cvne_quadrature_value(st, CvneApproxConfig(m, 2, +1)) -
          cvne_quadrature_value(st, CvneApproxConfig(m, 2, -1));
      CHECK(gap <= prev + 1e-10);
      CHECK(gap >= -1e-10);
      prev = gap;
    }
    prev = 1e300;
    for (int k : {0, 1, 2, 3}) {
      const double gap =
          cvne_quadrature_value(st, CvneApproxConfig(2, k, +1)) -
          cvne_quadrature_value(st, CvneApproxConfig(2, k, -1));
      CHECK(gap <= prev + 1e-10);
      prev = gap;
    }
  }
}

TEST_CASE("qutrit sandwich with the chainless rule") {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const auto st = quantum::ginibre_state(3, 3, rng);
    const double exact = quantum::cvne_exact(st);
    const double lo = cvne_quadrature_value(st, CvneApproxConfig(7, 0, -1));
    const double hi = cvne_quadrature_value(st, CvneApproxConfig(7, 0, +1));
    CHECK(lo <= exact + 1e-9);
    CHECK(exact <= hi + 1e-9);
  }
}

TEST_CASE("matrix construction matches the spectral evaluator on diagonal states") {
  CMat d = CMat::Zero(4, 4);
  d(0, 0) = 0.5;
  d(1, 1) = 0.3;
  d(2, 2) = 0.15;
  d(3, 3) = 0.05;
  const quantum::BipartiteState st(quantum::Hermitian(d), 2, 2);

  for (int apx : {-1, +1}) {
    const CvneApproxConfig cfg(2, 1, apx);
    // scalar_log_bound applied eigenvalue-wise (joint eigenbasis is diagonal)
    const CMat rb = quantum::partial_trace(d, 2, 2, quantum::Subsystem::B);
    const CMat y = quantum::kron(CMat::Identity(2, 2), rb);
    double nats = 0.0;
    for (int i = 0; i < 4; ++i) {
      nats += d(i, i).real() *
              scalar_log_bound(y(i, i).real() / d(i, i).real(), cfg);
    }
    CHECK(cvne_quadrature_value(st, cfg) ==
          doctest::Approx(nats / kLn2).epsilon(1e-8));
    // and the SDP hypograph attains the same value
    CHECK(sdp_cvne_apx(st, cfg) ==
          doctest::Approx(nats / kLn2).epsilon(2e-6));
  }
}

TEST_CASE("SDP hypograph matches the spectral evaluator on a random state") {
  Rng rng(54);
  const auto st = quantum::ginibre_state(2, 2, rng);
  for (int apx : {-1, +1}) {
    const CvneApproxConfig cfg(2, 1, apx);
    CHECK(sdp_cvne_apx(st, cfg) ==
          doctest::Approx(cvne_quadrature_value(st, cfg)).epsilon(2e-6));
  }
}

TEST_CASE("qutrit SDP hypograph matches the spectral evaluator") {
  Rng rng(55);
  const auto st = quantum::ginibre_state(3, 3, rng);
  const CvneApproxConfig cfg(2, 0, -1);
  CHECK(sdp_cvne_apx(st, cfg) ==
        doctest::Approx(cvne_quadrature_value(st, cfg)).epsilon(2e-6));
}

TEST_CASE("feasibility of the entropy constraint on fixed states") {
  // S_apx(I/4) = 1 exactly, so S_apx >= 0.9 must be feasible
  const quantum::BipartiteState mixed(
      quantum::Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  CHECK(cvne_quadrature_value(mixed, CvneApproxConfig(3, 3, -1)) > 0.9);

  // near the maximally entangled state, the lower approximation sits below
  // the exact value, which certifies infeasibility of S_apx >= -0.9
  const auto nearly_pure = quantum::noisy_max_entangled(0.999, 2);
  const double lo =
      cvne_quadrature_value(nearly_pure, CvneApproxConfig(3, 3, -1));
  CHECK(lo < -0.9);
  CHECK(lo <= quantum::cvne_exact(nearly_pure) + 1e-9);
}
