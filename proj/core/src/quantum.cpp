#include "bellcert/quantum.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bellcert::quantum {

namespace {

constexpr double kLn2 = 0.6931471805599453;

std::pair<RVec, CMat> eigh(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

Hermitian::Hermitian(CMat m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DomainError("Hermitian: matrix must be square and non-empty");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (asym > tol * scale) {
    throw DomainError("Hermitian: asymmetry " + std::to_string(asym) +
                      " exceeds tolerance");
  }
  m_ = hermitize(m);
}

double Hermitian::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool Hermitian::is_real(double tol) const {
  return m_.imag().cwiseAbs().maxCoeff() <= tol;
}

BipartiteState::BipartiteState(Hermitian rho, int d_a, int d_b)
    : rho_(std::move(rho)), d_a_(d_a), d_b_(d_b) {
  if ((d_a != 2 && d_a != 3) || (d_b != 2 && d_b != 3)) {
    throw DomainError("BipartiteState: subsystem dimensions must be 2 or 3");
  }
  if (rho_.dim() != d_a * d_b) {
    throw DomainError("BipartiteState: dimension mismatch");
  }
  if (rho_.min_eigenvalue() < -kPsdTol) {
    throw NotPsdError("BipartiteState: density matrix is not PSD");
  }
  if (std::abs(rho_.mat().trace().real() - 1.0) > kTraceTol) {
    throw DomainError("BipartiteState: trace must be 1");
  }
}

CMat pauli_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat pauli_y() {
  CMat m(2, 2);
  m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
  return m;
}

CMat pauli_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat kron(const CMat& a, const CMat& b) {
  const int ra = static_cast<int>(a.rows()), ca = static_cast<int>(a.cols());
  const int rb = static_cast<int>(b.rows()), cb = static_cast<int>(b.cols());
  CMat out(ra * rb, ca * cb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Hermitian kron(const Hermitian& a, const Hermitian& b) {
  return Hermitian(kron(a.mat(), b.mat()));
}

CMat partial_trace(const CMat& m, int d_a, int d_b, Subsystem keep) {
  if (m.rows() != d_a * d_b || m.cols() != d_a * d_b) {
    throw DomainError("partial_trace: dimension mismatch");
  }
  if (keep == Subsystem::A) {
    CMat out = CMat::Zero(d_a, d_a);
    for (int i = 0; i < d_a; ++i)
      for (int j = 0; j < d_a; ++j)
        for (int k = 0; k < d_b; ++k) out(i, j) += m(i * d_b + k, j * d_b + k);
    return out;
  }
  CMat out = CMat::Zero(d_b, d_b);
  for (int i = 0; i < d_b; ++i)
    for (int j = 0; j < d_b; ++j)
      for (int k = 0; k < d_a; ++k) out(i, j) += m(k * d_b + i, k * d_b + j);
  return out;
}

Hermitian partial_trace(const BipartiteState& state, Subsystem keep) {
  return Hermitian(
      partial_trace(state.rho().mat(), state.d_a(), state.d_b(), keep));
}

Hermitian matrix_log2(const Hermitian& m, double eigenvalue_floor) {
  auto [vals, vecs] = eigh(m.mat());
  if (vals.minCoeff() < -kPsdTol) {
    throw NotPsdError("matrix_log2: input is not PSD");
  }
  RVec logs(vals.size());
  for (int i = 0; i < vals.size(); ++i) {
    logs(i) = std::log2(std::max(vals(i), eigenvalue_floor));
  }
  CMat out = vecs * logs.asDiagonal() * vecs.adjoint();
  return Hermitian(hermitize(out));
}

Hermitian matrix_exp2(const Hermitian& m) {
  auto [vals, vecs] = eigh(m.mat());
  RVec exps(vals.size());
  for (int i = 0; i < vals.size(); ++i) exps(i) = std::exp2(vals(i));
  CMat out = vecs * exps.asDiagonal() * vecs.adjoint();
  return Hermitian(hermitize(out));
}

double vn_entropy(const Hermitian& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m.mat(), Eigen::EigenvaluesOnly);
  const RVec vals = es.eigenvalues();
  if (vals.minCoeff() < -kPsdTol) {
    throw NotPsdError("vn_entropy: input is not PSD");
  }
  double s = 0.0;
  for (int i = 0; i < vals.size(); ++i) {
    const double lambda = vals(i);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s / kLn2;
}

double cvne_exact(const BipartiteState& state) {
  return vn_entropy(state.rho()) - vn_entropy(partial_trace(state, Subsystem::B));
}

double werner_cvne(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("werner_cvne: p must be in [0,1]");
  const double a = (1.0 - p) / 4.0;
  const double b = (1.0 + 3.0 * p) / 4.0;
  double s = 0.0;
  if (a > 0.0) s -= 3.0 * a * std::log2(a);
  if (b > 0.0) s -= b * std::log2(b);
  return s - 1.0;
}

BipartiteState werner_state(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("werner_state: p must be in [0,1]");
  CMat m = CMat::Identity(4, 4);
  m -= p * kron(pauli_x(), pauli_x());
  m -= p * kron(pauli_y(), pauli_y());
  m -= p * kron(pauli_z(), pauli_z());
  return BipartiteState(Hermitian(0.25 * m), 2, 2);
}

CVec max_entangled_ket(int d) {
  CVec v = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

BipartiteState noisy_max_entangled(double v, int d) {
  if (v < 0.0 || v > 1.0) throw DomainError("noisy_max_entangled: v in [0,1]");
  const CVec phi = max_entangled_ket(d);
  CMat m = v * (phi * phi.adjoint());
  m += ((1.0 - v) / double(d * d)) * CMat::Identity(d * d, d * d);
  return BipartiteState(Hermitian(m), d, d);
}

BipartiteState ginibre_state(int d_a, int d_b, Rng& rng) {
  const int n = d_a * d_b;
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return BipartiteState(Hermitian(rho), d_a, d_b);
}

CMat random_unitary(int d, Rng& rng) {
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the factorization is unique
  for (int j = 0; j < d; ++j) {
    Cplx rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace bellcert::quantum
