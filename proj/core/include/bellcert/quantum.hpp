#pragma once

#include <utility>

#include "bellcert/rng.hpp"
#include "bellcert/types.hpp"

namespace bellcert::quantum {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kDefaultEigFloor = 1e-12;

/// Hermitian matrix value type. Construction symmetrizes (m + m†)/2 and
/// rejects inputs whose asymmetry exceeds `tol`.
class Hermitian {
 public:
  explicit Hermitian(CMat m, double tol = kHermitianTol);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& mat() const { return m_; }

  double min_eigenvalue() const;
  bool is_real(double tol = kHermitianTol) const;

 private:
  CMat m_;
};

/// Bipartite density matrix on C^{d_A} (x) C^{d_B}. Validates PSD (within
/// 1e-9), unit trace (within 1e-9), and the supported dimensions {2, 3}.
class BipartiteState {
 public:
  BipartiteState(Hermitian rho, int d_a, int d_b);

  const Hermitian& rho() const { return rho_; }
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int dim() const { return d_a_ * d_b_; }

 private:
  Hermitian rho_;
  int d_a_;
  int d_b_;
};

enum class Subsystem { A, B };

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

/// (m + m†)/2
CMat hermitize(const CMat& m);

/// Kronecker product a (x) b; composite row index is i_a * dim(b) + i_b.
CMat kron(const CMat& a, const CMat& b);
Hermitian kron(const Hermitian& a, const Hermitian& b);

/// Partial trace of an arbitrary matrix on C^{d_A} (x) C^{d_B}.
CMat partial_trace(const CMat& m, int d_a, int d_b, Subsystem keep);
Hermitian partial_trace(const BipartiteState& state, Subsystem keep);

/// Spectral log base 2 with eigenvalue floor: U diag(log2 max(lambda, floor)) U†.
/// Throws NotPsdError when the smallest eigenvalue is below -1e-9.
Hermitian matrix_log2(const Hermitian& m, double eigenvalue_floor = kDefaultEigFloor);

/// Spectral exp2: U diag(2^lambda) U†.
Hermitian matrix_exp2(const Hermitian& m);

/// Von Neumann entropy in bits: -sum_i lambda_i log2 lambda_i (lambda_i > 0).
double vn_entropy(const Hermitian& m);

/// Conditional von Neumann entropy S(AB) - S(B), in bits.
double cvne_exact(const BipartiteState& state);

/// Closed-form CVNE of the two-qubit Werner state at parameter p.
double werner_cvne(double p);

/// Two-qubit Werner state (1/4)(I - p sum_i sigma_i (x) sigma_i).
BipartiteState werner_state(double p);

/// Maximally entangled ket sum_i |ii>/sqrt(D) as a column vector.
CVec max_entangled_ket(int d);

/// v |Phi><Phi| + (1 - v) I / D^2 with |Phi> the maximally entangled state.
BipartiteState noisy_max_entangled(double v, int d);

/// Full-rank random density matrix from the Ginibre ensemble (G G† normalized).
BipartiteState ginibre_state(int d_a, int d_b, Rng& rng);

/// Haar-ish random unitary via QR of a Ginibre matrix.
CMat random_unitary(int d, Rng& rng);

}  // namespace bellcert::quantum
