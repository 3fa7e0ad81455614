#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bellcert/quantum.hpp"
#include "bellcert/types.hpp"

namespace bellcert::sdp {

enum class Sense { Maximize, Minimize };

struct VarHandle {
  int id = -1;
  bool valid() const { return id >= 0; }
};

/// Conic model over complex Hermitian matrix variables: a real-linear
/// objective sum_v Tr(C_v X_v), affine equalities, and LMI blocks
/// F_0 + sum_p x_p F_p >= 0 where x is the real parametrization of all
/// variable entries (diagonal, and re/im of each off-diagonal).
///
/// Variables are free; positive semidefiniteness is imposed per variable
/// through an explicit LMI block (see add_psd_constraint /
/// add_density_variable). A variable declared real_only carries no
/// imaginary parameters.
class SdpProblem {
 public:
  struct Variable {
    std::string name;
    int dim = 0;
    bool real_only = false;
    int param_offset = 0;
    int nparams = 0;
  };
  enum class ParamKind { Diag, Re, Im };
  struct ParamDesc {
    int var = -1;
    int row = 0;
    int col = 0;
    ParamKind kind = ParamKind::Diag;
  };
  struct BlockEntry {
    int param;
    // upper-triangle triplets (i <= j); the Hermitian mirror is implied
    std::vector<std::tuple<int, int, Cplx>> upper;
  };
  struct Block {
    int dim = 0;
    CMat constant;
    std::vector<BlockEntry> entries;
  };
  struct EqRow {
    std::vector<std::pair<int, double>> terms;  // (param, coeff)
    double rhs = 0.0;
  };

  VarHandle add_hermitian_variable(const std::string& name, int dim,
                                   bool real_only = false);

  void set_sense(Sense s) { sense_ = s; }
  Sense sense() const { return sense_; }

  /// Accumulates Tr(coeff * X_v) into the objective; coeff must be Hermitian.
  void add_objective(VarHandle v, const CMat& coeff);

  /// sum_v Tr(C_v X_v) = rhs.
  void add_equality(const std::vector<std::pair<VarHandle, CMat>>& terms,
                    double rhs);

  int add_lmi_block(int dim);
  void block_add_constant(int blk, const CMat& c);
  /// Places coeff * X_v as the sub-block at (row, col); the Hermitian mirror
  /// conj(coeff) * X_v at (col, row) is added automatically when row != col.
  void block_place(int blk, VarHandle v, int row, int col, Cplx coeff);
  /// Adds map(X_v) to the block, where map is linear and must produce a
  /// Hermitian image on every basis matrix of v.
  void block_add_linear(int blk, VarHandle v,
                        const std::function<CMat(const CMat&)>& map);

  /// sum_v Tr(C_v X_v) + constant >= 0, modeled as a 1x1 LMI block.
  void add_scalar_inequality(
      const std::vector<std::pair<VarHandle, CMat>>& terms, double constant);

  /// X_v >= 0 as an LMI block.
  void add_psd_constraint(VarHandle v);

  /// Hermitian variable of dim d_A*d_B with PSD constraint and Tr = 1.
  VarHandle add_density_variable(int d_a, int d_b, bool real_only = false);

  /// Per setting, two PSD variables (binary outcomes) with a completeness
  /// equality to the identity.
  std::vector<std::array<VarHandle, 2>> add_povm_variables(
      int settings, int dim, bool real_only = false);

  // --- introspection ---
  int nparams() const { return nparams_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Block>& lmi_blocks() const { return blocks_; }
  const std::vector<EqRow>& equalities() const { return eqs_; }
  const RVec& objective_vector() const { return obj_; }
  ParamDesc param_desc(int param) const;
  int var_dim(VarHandle v) const { return vars_.at(v.id).dim; }

  /// Basis matrix E_p of a parameter (in its variable's dimension).
  CMat basis_matrix(int param) const;

  /// Reassembles the complex Hermitian value of a variable from x.
  CMat assemble_value(VarHandle v, const RVec& x) const;

  /// Parameter-space coefficients of Tr(coeff * X_v).
  std::vector<std::pair<int, double>> linearize_trace(VarHandle v,
                                                      const CMat& coeff) const;

  /// Plain-text dump of the conic program (see docs/sdp_dump.md).
  void dump(std::ostream& os) const;

 private:
  const Variable& var_checked(VarHandle v) const;

  Sense sense_ = Sense::Maximize;
  int nparams_ = 0;
  std::vector<Variable> vars_;
  std::vector<Block> blocks_;
  std::vector<EqRow> eqs_;
  RVec obj_ = RVec::Zero(0);
};

enum class SolveStatus { Optimal, NearOptimal, Infeasible, NumericalFailure };

std::string to_string(SolveStatus s);

struct SolverOptions {
  int max_iters = 100;
  double feas_tol = 1e-8;
  double gap_tol = 1e-7;
  bool verbose = false;
};

/// Certified solution: per-variable values, both objectives (in the problem's
/// sense), the relative duality gap and feasibility residuals.
struct SdpSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<CMat> values;  // by variable id
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;  // relative
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string detail;

  bool ok() const {
    return status == SolveStatus::Optimal || status == SolveStatus::NearOptimal;
  }
};

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts = {});

}  // namespace bellcert::sdp
