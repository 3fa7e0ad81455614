#pragma once

#include <tuple>
#include <vector>

#include "bellcert/sdp.hpp"
#include "bellcert/types.hpp"

namespace bellcert::sdp {

/// [[R, -J], [J, R]] for X = R + iJ; X >= 0 iff the embedding is >= 0 and
/// both share the same minimum eigenvalue (doubled multiplicities).
RMat embed_hermitian(const CMat& h);

/// S(x) = constant + sum_p x_p F_p over real symmetric blocks.
struct RealBlockEntry {
  int param;
  std::vector<std::tuple<int, int, double>> upper;  // i <= j
};

struct RealBlock {
  int dim = 0;
  bool embedded = false;  // true when this block is a complex->real embedding
  RMat constant;
  std::vector<RealBlockEntry> entries;
};

/// Real-symmetric conic program equivalent to an SdpProblem: blocks whose
/// data is entirely real keep their dimension; blocks touching complex data
/// are embedded with doubled dimension. Objective values are preserved
/// exactly (the objective lives on the shared real parametrization).
struct RealForm {
  int nparams = 0;
  Sense sense = Sense::Maximize;
  RVec objective;
  struct EqRow {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
  };
  std::vector<EqRow> eqs;
  std::vector<RealBlock> blocks;
};

RealForm build_real_form(const SdpProblem& p);

struct RealSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  RVec x;
  double primal_obj = 0.0;  // in the problem's sense
  double dual_obj = 0.0;
  double gap_rel = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string detail;
};

RealSolution solve_real(const RealForm& f, const SolverOptions& opts = {});

}  // namespace bellcert::sdp
