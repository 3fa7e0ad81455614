#include <doctest.h>

#include <cmath>

#include "bellcert/quantum.hpp"
#include "bellcert/rng.hpp"

using namespace bellcert;
using namespace bellcert::quantum;

namespace {

CMat random_hermitian(int d, Rng& rng) {
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  return hermitize(g);
}

}  // namespace

TEST_CASE("kron identities and brute-force oracle") {
  const CMat i2 = CMat::Identity(2, 2);
  CHECK((kron(i2, i2) - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));

  const CMat zz = kron(pauli_z(), pauli_z());
  CHECK(zz(0, 0).real() == doctest::Approx(1.0));
  CHECK(zz(1, 1).real() == doctest::Approx(-1.0));
  CHECK(zz(2, 2).real() == doctest::Approx(-1.0));
  CHECK(zz(3, 3).real() == doctest::Approx(1.0));

  Rng rng(42);
  const CMat p = random_hermitian(2, rng);
  const CMat q = random_hermitian(2, rng);
  const CMat pq = kron(p, q);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          // four-index brute force: (p (x) q)[(i,k),(j,l)] = p_ij q_kl
          CHECK(std::abs(pq(i * 2 + k, j * 2 + l) - p(i, j) * q(k, l)) < 1e-14);
        }
}

TEST_CASE("partial trace marginals and index-sum oracle") {
  const auto phi = noisy_max_entangled(1.0, 2);
  const CMat marg = partial_trace(phi, Subsystem::B).mat();
  CHECK((marg - 0.5 * CMat::Identity(2, 2)).norm() < 1e-12);

  Rng rng(7);
  // product state: Tr_A(rho_A (x) rho_B) = rho_B
  const CMat a = ginibre_state(2, 2, rng).rho().mat();
  CMat ra(2, 2), rb(2, 2);
  ra << 0.7, Cplx(0.1, 0.2), Cplx(0.1, -0.2), 0.3;
  rb << 0.6, Cplx(-0.05, 0.1), Cplx(-0.05, -0.1), 0.4;
  const CMat prod = kron(ra, rb);
  CHECK((partial_trace(prod, 2, 2, Subsystem::B) - rb).norm() < 1e-12);
  CHECK((partial_trace(prod, 2, 2, Subsystem::A) - ra).norm() < 1e-12);

  // random state vs explicit index summation
  const auto state = ginibre_state(2, 2, rng);
  const CMat rho = state.rho().mat();
  CMat oracle = CMat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) oracle(i, j) += rho(k * 2 + i, k * 2 + j);
  CHECK((partial_trace(state, Subsystem::B).mat() - oracle).norm() < 1e-12);
  (void)a;
}

TEST_CASE("partial trace preserves trace and PSD on random states") {
  Rng rng(11);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto st = ginibre_state(2, 2, rng);
    for (auto keep : {Subsystem::A, Subsystem::B}) {
      const Hermitian red = partial_trace(st, keep);
      if (std::abs(red.mat().trace().real() - 1.0) > 1e-9) ++bad;
      if (red.min_eigenvalue() < -1e-9) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("matrix_log2 closed forms and exp2 round trip") {
  CHECK(matrix_log2(Hermitian(CMat::Identity(4, 4))).mat().norm() <
        1e-10);

  CMat d(2, 2);
  d << 2, 0, 0, 1;
  const CMat l = matrix_log2(Hermitian(d)).mat();
  CHECK(l(0, 0).real() == doctest::Approx(1.0));
  CHECK(l(1, 1).real() == doctest::Approx(0.0));

  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    // spectrum in [1e-3, 1e3]
    const CMat u = random_unitary(4, rng);
    RVec vals(4);
    for (int i = 0; i < 4; ++i) vals(i) = std::pow(10.0, rng.uniform(-3, 3));
    const CMat m = u * vals.asDiagonal() * u.adjoint();
    const Hermitian h(hermitize(m));
    const CMat back = matrix_exp2(matrix_log2(h)).mat();
    CHECK((back - h.mat()).cwiseAbs().maxCoeff() <
          1e-8 * std::max(1.0, h.mat().cwiseAbs().maxCoeff()));
  }

  CMat neg(2, 2);
  neg << -1, 0, 0, 1;
  CHECK_THROWS_AS(matrix_log2(Hermitian(neg)), NotPsdError);
}

TEST_CASE("vn_entropy values and unitary invariance") {
  CHECK(vn_entropy(Hermitian(CMat::Identity(4, 4) / 4.0)) ==
        doctest::Approx(2.0));
  const auto phi = noisy_max_entangled(1.0, 2);
  CHECK(vn_entropy(phi.rho()) == doctest::Approx(0.0).epsilon(1e-9));
  CMat d3 = CMat::Zero(3, 3);
  d3(0, 0) = 0.5;
  d3(1, 1) = 0.25;
  d3(2, 2) = 0.25;
  CHECK(vn_entropy(Hermitian(d3)) == doctest::Approx(1.5));

  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto st = ginibre_state(2, 2, rng);
    const CMat u = random_unitary(4, rng);
    const Hermitian rotated(hermitize(u * st.rho().mat() * u.adjoint()));
    CHECK(vn_entropy(rotated) ==
          doctest::Approx(vn_entropy(st.rho())).epsilon(1e-9));
  }
}

TEST_CASE("cvne_exact reference points") {
  CHECK(cvne_exact(noisy_max_entangled(1.0, 2)) == doctest::Approx(-1.0));
  const BipartiteState mixed(Hermitian(CMat::Identity(4, 4) / 4.0), 2, 2);
  CHECK(cvne_exact(mixed) == doctest::Approx(1.0));
  CHECK(cvne_exact(werner_state(0.747614)) ==
        doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("cvne_exact range and extremes at d = 2, 3") {
  Rng rng(17);
  for (int d : {2, 3}) {
    const double lim = std::log2(double(d));
    CHECK(cvne_exact(noisy_max_entangled(1.0, d)) == doctest::Approx(-lim));
    for (int rep = 0; rep < 50; ++rep) {
      const auto st = ginibre_state(d, d, rng);
      const double s = cvne_exact(st);
      CHECK(s >= -lim - 1e-9);
      CHECK(s <= lim + 1e-9);
      // full-rank Ginibre states stay away from the extreme
      CHECK(s > -lim + 1e-6);
    }
  }
}

TEST_CASE("werner_cvne closed form") {
  CHECK(werner_cvne(1.0) == doctest::Approx(-1.0));
  CHECK(werner_cvne(0.0) == doctest::Approx(1.0));
  CHECK(werner_cvne(0.747614) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK_THROWS_AS(werner_cvne(1.5), DomainError);

  // matches the exact CVNE of the Werner matrix across p
  for (double p : {0.1, 0.3, 0.6, 0.9, 0.99}) {
    CHECK(cvne_exact(werner_state(p)) ==
          doctest::Approx(werner_cvne(p)).epsilon(1e-10));
  }
}

TEST_CASE("noisy_max_entangled construction") {
  const auto mixed = noisy_max_entangled(0.0, 2);
  CHECK((mixed.rho().mat() - CMat::Identity(4, 4) / 4.0).norm() < 1e-12);

  const auto pure = noisy_max_entangled(1.0, 2);
  CHECK(vn_entropy(pure.rho()) == doctest::Approx(0.0).epsilon(1e-9));

  // the isotropic state is locally equivalent to the Werner form
  CHECK(cvne_exact(noisy_max_entangled(0.8, 2)) ==
        doctest::Approx(werner_cvne(0.8)).epsilon(1e-9));

  const auto qutrit = noisy_max_entangled(0.5, 3);
  CHECK(qutrit.rho().mat().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("hermitian construction rejects asymmetry") {
  CMat bad(2, 2);
  bad << 1.0, Cplx(0.0, 1.0), Cplx(0.0, 1.0), 1.0;  // not Hermitian
  CHECK_THROWS_AS(Hermitian{bad}, DomainError);
}
