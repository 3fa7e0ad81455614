#include "bellcert/sdp.hpp"

#include <cmath>
#include <ostream>

#include "bellcert/sdp_realform.hpp"

namespace bellcert::sdp {

namespace {
constexpr double kCoeffTol = 1e-14;
}

VarHandle SdpProblem::add_hermitian_variable(const std::string& name, int dim,
                                             bool real_only) {
  if (dim < 1) throw ModelError("variable dimension must be >= 1");
  Variable v;
  v.name = name;
  v.dim = dim;
  v.real_only = real_only;
  v.param_offset = nparams_;
  v.nparams = real_only ? dim * (dim + 1) / 2 : dim * dim;
  vars_.push_back(v);
  nparams_ += v.nparams;
  obj_.conservativeResize(nparams_);
  obj_.tail(v.nparams).setZero();
  return VarHandle{static_cast<int>(vars_.size()) - 1};
}

const SdpProblem::Variable& SdpProblem::var_checked(VarHandle v) const {
  if (!v.valid() || v.id >= static_cast<int>(vars_.size())) {
    throw ModelError("invalid variable handle");
  }
  return vars_[v.id];
}

SdpProblem::ParamDesc SdpProblem::param_desc(int param) const {
  for (int vi = 0; vi < static_cast<int>(vars_.size()); ++vi) {
    const Variable& v = vars_[vi];
    if (param < v.param_offset || param >= v.param_offset + v.nparams) continue;
    int local = param - v.param_offset;
    ParamDesc d;
    d.var = vi;
    if (local < v.dim) {
      d.kind = ParamKind::Diag;
      d.row = d.col = local;
      return d;
    }
    local -= v.dim;
    const int step = v.real_only ? 1 : 2;
    int pair = local / step;
    int part = local % step;
    // enumerate (a, b), a < b in row-major order
    int a = 0, count = v.dim - 1;
    while (pair >= count) {
      pair -= count;
      ++a;
      --count;
    }
    d.row = a;
    d.col = a + 1 + pair;
    d.kind = (part == 0) ? ParamKind::Re : ParamKind::Im;
    return d;
  }
  throw ModelError("parameter index out of range");
}

CMat SdpProblem::basis_matrix(int param) const {
  const ParamDesc d = param_desc(param);
  const int dim = vars_[d.var].dim;
  CMat e = CMat::Zero(dim, dim);
  switch (d.kind) {
    case ParamKind::Diag:
      e(d.row, d.col) = 1.0;
      break;
    case ParamKind::Re:
      e(d.row, d.col) = 1.0;
      e(d.col, d.row) = 1.0;
      break;
    case ParamKind::Im:
      e(d.row, d.col) = Cplx(0, 1);
      e(d.col, d.row) = Cplx(0, -1);
      break;
  }
  return e;
}

CMat SdpProblem::assemble_value(VarHandle v, const RVec& x) const {
  const Variable& var = var_checked(v);
  CMat out = CMat::Zero(var.dim, var.dim);
  int p = var.param_offset;
  for (int a = 0; a < var.dim; ++a) out(a, a) = x(p++);
  for (int a = 0; a < var.dim; ++a) {
    for (int b = a + 1; b < var.dim; ++b) {
      const double re = x(p++);
      const double im = var.real_only ? 0.0 : x(p++);
      out(a, b) = Cplx(re, im);
      out(b, a) = Cplx(re, -im);
    }
  }
  return out;
}

std::vector<std::pair<int, double>> SdpProblem::linearize_trace(
    VarHandle v, const CMat& coeff) const {
  const Variable& var = var_checked(v);
  if (coeff.rows() != var.dim || coeff.cols() != var.dim) {
    throw ModelError("coefficient dimension mismatch for " + var.name);
  }
  if ((coeff - coeff.adjoint()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, coeff.cwiseAbs().maxCoeff())) {
    throw ModelError("trace coefficient must be Hermitian");
  }
  std::vector<std::pair<int, double>> out;
  int p = var.param_offset;
  for (int a = 0; a < var.dim; ++a) {
    const double c = coeff(a, a).real();
    if (std::abs(c) > kCoeffTol) out.emplace_back(p, c);
    ++p;
  }
  for (int a = 0; a < var.dim; ++a) {
    for (int b = a + 1; b < var.dim; ++b) {
      const double re = 2.0 * coeff(a, b).real();
      if (std::abs(re) > kCoeffTol) out.emplace_back(p, re);
      ++p;
      if (!var.real_only) {
        const double im = 2.0 * coeff(a, b).imag();
        if (std::abs(im) > kCoeffTol) out.emplace_back(p, im);
        ++p;
      }
    }
  }
  return out;
}

void SdpProblem::add_objective(VarHandle v, const CMat& coeff) {
  for (const auto& [p, c] : linearize_trace(v, coeff)) obj_(p) += c;
}

void SdpProblem::add_equality(
    const std::vector<std::pair<VarHandle, CMat>>& terms, double rhs) {
  EqRow row;
  row.rhs = rhs;
  for (const auto& [v, c] : terms) {
    for (const auto& pc : linearize_trace(v, c)) row.terms.push_back(pc);
  }
  eqs_.push_back(std::move(row));
}

int SdpProblem::add_lmi_block(int dim) {
  if (dim < 1) throw ModelError("LMI block dimension must be >= 1");
  Block b;
  b.dim = dim;
  b.constant = CMat::Zero(dim, dim);
  blocks_.push_back(std::move(b));
  return static_cast<int>(blocks_.size()) - 1;
}

void SdpProblem::block_add_constant(int blk, const CMat& c) {
  Block& b = blocks_.at(blk);
  if (c.rows() != b.dim || c.cols() != b.dim) {
    throw ModelError("block constant dimension mismatch");
  }
  b.constant += c;
  if ((b.constant - b.constant.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ModelError("block constant must stay Hermitian");
  }
}

void SdpProblem::block_add_linear(int blk, VarHandle v,
                                  const std::function<CMat(const CMat&)>& map) {
  Block& b = blocks_.at(blk);
  const Variable& var = var_checked(v);
  for (int local = 0; local < var.nparams; ++local) {
    const int p = var.param_offset + local;
    const CMat img = map(basis_matrix(p));
    if (img.rows() != b.dim || img.cols() != b.dim) {
      throw ModelError("linear map image dimension mismatch");
    }
    const double scale = std::max(1.0, img.cwiseAbs().maxCoeff());
    if ((img - img.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
      throw ModelError("linear map image must be Hermitian");
    }
    BlockEntry entry;
    entry.param = p;
    for (int i = 0; i < b.dim; ++i) {
      for (int j = i; j < b.dim; ++j) {
        const Cplx val = img(i, j);
        if (std::abs(val) > kCoeffTol) entry.upper.emplace_back(i, j, val);
      }
    }
    if (!entry.upper.empty()) b.entries.push_back(std::move(entry));
  }
}

void SdpProblem::block_place(int blk, VarHandle v, int row, int col,
                             Cplx coeff) {
  const int d = var_checked(v).dim;
  const int bd = blocks_.at(blk).dim;
  if (row + d > bd || col + d > bd) throw ModelError("placement out of range");
  block_add_linear(blk, v, [row, col, coeff, d, bd](const CMat& e) {
    CMat m = CMat::Zero(bd, bd);
    m.block(row, col, d, d) = coeff * e;
    if (row != col) m.block(col, row, d, d) += std::conj(coeff) * e.adjoint();
    return m;
  });
}

void SdpProblem::add_scalar_inequality(
    const std::vector<std::pair<VarHandle, CMat>>& terms, double constant) {
  const int blk = add_lmi_block(1);
  block_add_constant(blk, CMat::Constant(1, 1, constant));
  for (const auto& [v, c] : terms) {
    Block& b = blocks_[blk];
    for (const auto& [p, coeff] : linearize_trace(v, c)) {
      BlockEntry e;
      e.param = p;
      e.upper.emplace_back(0, 0, Cplx(coeff, 0.0));
      b.entries.push_back(std::move(e));
    }
  }
}

void SdpProblem::add_psd_constraint(VarHandle v) {
  const int blk = add_lmi_block(var_checked(v).dim);
  block_place(blk, v, 0, 0, 1.0);
}

VarHandle SdpProblem::add_density_variable(int d_a, int d_b, bool real_only) {
  const int n = d_a * d_b;
  VarHandle v = add_hermitian_variable("rho_" + std::to_string(vars_.size()),
                                       n, real_only);
  add_psd_constraint(v);
  add_equality({{v, CMat::Identity(n, n)}}, 1.0);
  return v;
}

std::vector<std::array<VarHandle, 2>> SdpProblem::add_povm_variables(
    int settings, int dim, bool real_only) {
  std::vector<std::array<VarHandle, 2>> out;
  for (int s = 0; s < settings; ++s) {
    const std::string base = "M" + std::to_string(vars_.size());
    VarHandle m0 = add_hermitian_variable(base + "_0", dim, real_only);
    VarHandle m1 = add_hermitian_variable(base + "_1", dim, real_only);
    add_psd_constraint(m0);
    add_psd_constraint(m1);
    // completeness: (M0 + M1)_{ab} = delta_ab, expanded to real rows
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        CMat e_re = CMat::Zero(dim, dim);
        e_re(a, b) += 1.0;
        e_re(b, a) += 1.0;
        if (a == b) {
          add_equality({{m0, 0.5 * e_re}, {m1, 0.5 * e_re}}, 1.0);
          continue;
        }
        add_equality({{m0, e_re}, {m1, e_re}}, 0.0);
        if (!real_only) {
          CMat e_im = CMat::Zero(dim, dim);
          e_im(a, b) = Cplx(0, 1);
          e_im(b, a) = Cplx(0, -1);
          add_equality({{m0, e_im}, {m1, e_im}}, 0.0);
        }
      }
    }
    out.push_back({m0, m1});
  }
  return out;
}

void SdpProblem::dump(std::ostream& os) const {
  os.precision(17);
  os << "sdp-dump v1\n";
  os << "sense " << (sense_ == Sense::Maximize ? "maximize" : "minimize")
     << "\n";
  os << "params " << nparams_ << "\n";
  os << "vars " << vars_.size() << "\n";
  for (const auto& v : vars_) {
    os << "var " << v.name << " dim " << v.dim
       << (v.real_only ? " real" : " complex") << " offset " << v.param_offset
       << " nparams " << v.nparams << "\n";
  }
  os << "objective";
  for (int p = 0; p < nparams_; ++p) {
    if (obj_(p) != 0.0) os << " " << p << ":" << obj_(p);
  }
  os << "\n";
  os << "equalities " << eqs_.size() << "\n";
  for (const auto& eq : eqs_) {
    os << "eq rhs " << eq.rhs;
    for (const auto& [p, c] : eq.terms) os << " " << p << ":" << c;
    os << "\n";
  }
  os << "blocks " << blocks_.size() << "\n";
  for (const auto& b : blocks_) {
    os << "block dim " << b.dim << "\n";
    for (int i = 0; i < b.dim; ++i) {
      for (int j = i; j < b.dim; ++j) {
        const Cplx c = b.constant(i, j);
        if (std::abs(c) > kCoeffTol) {
          os << "  const " << i << " " << j << " " << c.real() << " "
             << c.imag() << "\n";
        }
      }
    }
    for (const auto& e : b.entries) {
      for (const auto& [i, j, c] : e.upper) {
        os << "  term " << e.param << " " << i << " " << j << " " << c.real()
           << " " << c.imag() << "\n";
      }
    }
  }
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::NearOptimal: return "near_optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts) {
  const RealForm form = build_real_form(p);
  const RealSolution rs = solve_real(form, opts);
  SdpSolution out;
  out.status = rs.status;
  out.objective_value = rs.primal_obj;
  out.dual_objective = rs.dual_obj;
  out.duality_gap = rs.gap_rel;
  out.primal_residual = rs.primal_residual;
  out.dual_residual = rs.dual_residual;
  out.iterations = rs.iterations;
  out.detail = rs.detail;
  if (rs.x.size() == p.nparams()) {
    for (int vi = 0; vi < static_cast<int>(p.variables().size()); ++vi) {
      out.values.push_back(p.assemble_value(VarHandle{vi}, rs.x));
    }
  }
  return out;
}

}  // namespace bellcert::sdp
