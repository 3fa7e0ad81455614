#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bellcert/sdp_realform.hpp"

// Primal-dual path-following interior-point method with Nesterov-Todd
// scaling and a Mehrotra predictor-corrector step, for the conic program
//
//   minimize    c.x
//   subject to  A x = b,
//               S_b(x) = C_b + sum_p x_p F_{p,b}  PSD  for every block b.
//
// The KKT system is condensed onto the x variables: Q = F' (V . V) F with
// V the inverse NT scaling per block, factored densely. Constraint matrices
// F_{p,b} are sparse triplet lists, so forming Q costs
// O(sum_b nparams_b * (nnz * dim_b^2)) per iteration.

namespace bellcert::sdp {

namespace {

struct MergedBlock {
  int dim = 0;
  RMat constant;
  // one entry per parameter, triplets on the upper triangle
  std::vector<RealBlockEntry> entries;
};

MergedBlock merge_block(const RealBlock& b) {
  MergedBlock out;
  out.dim = b.dim;
  out.constant = b.constant;
  std::map<int, std::map<std::pair<int, int>, double>> acc;
  for (const auto& e : b.entries) {
    auto& slot = acc[e.param];
    for (const auto& [i, j, v] : e.upper) slot[{i, j}] += v;
  }
  for (auto& [param, trips] : acc) {
    RealBlockEntry e;
    e.param = param;
    for (const auto& [ij, v] : trips) {
      if (v != 0.0) e.upper.emplace_back(ij.first, ij.second, v);
    }
    if (!e.upper.empty()) out.entries.push_back(std::move(e));
  }
  return out;
}

// F_p applied as a dense symmetric matrix accumulation.
void add_param_matrix(const RealBlockEntry& e, double coeff, RMat& m) {
  for (const auto& [i, j, v] : e.upper) {
    m(i, j) += coeff * v;
    if (i != j) m(j, i) += coeff * v;
  }
}

double inner_with_param(const RealBlockEntry& e, const RMat& m) {
  double s = 0.0;
  for (const auto& [i, j, v] : e.upper) {
    s += v * m(i, j) * (i == j ? 1.0 : 2.0);
  }
  return s;
}

struct BlockWork {
  MergedBlock data;
  RMat s, z;          // cone iterates
  RMat r, rinv, v;    // NT factor, its inverse, V = (R R')^{-1}
  RVec lambda;        // scaled point
};

class Solver {
 public:
  Solver(const RealForm& f, const SolverOptions& opts)
      : opts_(opts), nparams_(f.nparams), sense_(f.sense) {
    c_ = f.objective;
    if (sense_ == Sense::Maximize) c_ = -c_;
    for (const auto& eq : f.eqs) {
      eq_rows_.push_back(eq.terms);
      b_.conservativeResize(static_cast<int>(eq_rows_.size()));
      b_(static_cast<int>(eq_rows_.size()) - 1) = eq.rhs;
    }
    neq_ = static_cast<int>(eq_rows_.size());
    for (const auto& rb : f.blocks) {
      BlockWork w;
      w.data = merge_block(rb);
      blocks_.push_back(std::move(w));
      rank_ += rb.dim;
      h_norm_ += blocks_.back().data.constant.squaredNorm();
    }
    h_norm_ = std::sqrt(h_norm_);
  }

  RealSolution run();

 private:
  RVec apply_a(const RVec& x) const {
    RVec out = RVec::Zero(neq_);
    for (int r = 0; r < neq_; ++r) {
      double s = 0.0;
      for (const auto& [p, v] : eq_rows_[r]) s += v * x(p);
      out(r) = s;
    }
    return out;
  }

  RVec apply_at(const RVec& y) const {
    RVec out = RVec::Zero(nparams_);
    for (int r = 0; r < neq_; ++r) {
      for (const auto& [p, v] : eq_rows_[r]) out(p) += y(r) * v;
    }
    return out;
  }

  RMat apply_f(const BlockWork& w, const RVec& x) const {
    RMat m = RMat::Zero(w.data.dim, w.data.dim);
    for (const auto& e : w.data.entries) add_param_matrix(e, x(e.param), m);
    return m;
  }

  void accumulate_ft(const BlockWork& w, const RMat& m, RVec& g) const {
    for (const auto& e : w.data.entries) g(e.param) += inner_with_param(e, m);
  }

  // Newton solve for the condensed system; bz2 is per-block.
  // Returns dx, dy and fills dz (dense per block).
  bool solve3(const RVec& bx, const RVec& by, const std::vector<RMat>& bz2,
              RVec& dx, RVec& dy, std::vector<RMat>& dz) const {
    RVec rhs1 = bx;
    std::vector<RMat> vbv(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      const BlockWork& w = blocks_[bi];
      vbv[bi] = w.v * bz2[bi] * w.v;
      RVec g = RVec::Zero(nparams_);
      accumulate_ft(w, vbv[bi], g);
      rhs1 -= g;
    }
    if (!saddle_solve(rhs1, by, dx, dy)) return false;
    dz.resize(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      const BlockWork& w = blocks_[bi];
      const RMat fdx = apply_f(w, dx);
      dz[bi] = w.v * (-fdx - bz2[bi]) * w.v;
    }
    return true;
  }

  bool saddle_solve(const RVec& r1, const RVec& r2, RVec& dx, RVec& dy) const {
    auto solve_once = [&](const RVec& a, const RVec& b2, RVec& ox,
                          RVec& oy) -> bool {
      if (neq_ == 0) {
        ox = qllt_.solve(a);
        oy = RVec::Zero(0);
        return true;
      }
      const RVec qinv_a = qllt_.solve(a);
      RVec rhs = apply_a(qinv_a) - b2;
      oy = mllt_.solve(rhs);
      ox = qllt_.solve(a - apply_at(oy));
      return true;
    };
    if (!solve_once(r1, r2, dx, dy)) return false;
    // one pass of iterative refinement on the saddle system
    RVec res1 = r1 - q_ * dx;
    if (neq_ > 0) res1 -= apply_at(dy);
    RVec res2 = neq_ > 0 ? RVec(r2 - apply_a(dx)) : RVec::Zero(0);
    RVec ex, ey;
    if (solve_once(res1, res2, ex, ey)) {
      dx += ex;
      if (neq_ > 0) dy += ey;
    }
    return dx.allFinite() && (neq_ == 0 || dy.allFinite());
  }

  bool factor_kkt() {
    q_ = RMat::Zero(nparams_, nparams_);
    RMat m_p;
    for (const auto& w : blocks_) {
      const int np = static_cast<int>(w.data.entries.size());
      m_p.resize(w.data.dim, w.data.dim);
      for (int a = 0; a < np; ++a) {
        const auto& ea = w.data.entries[a];
        m_p.setZero();
        for (const auto& [i, j, v] : ea.upper) {
          m_p.noalias() += v * (w.v.col(i) * w.v.col(j).transpose());
          if (i != j) m_p.noalias() += v * (w.v.col(j) * w.v.col(i).transpose());
        }
        for (int bb = 0; bb <= a; ++bb) {
          const auto& eb = w.data.entries[bb];
          const double val = inner_with_param(eb, m_p);
          q_(ea.param, eb.param) += val;
          if (ea.param != eb.param) q_(eb.param, ea.param) += val;
        }
      }
    }
    const double reg = 1e-13 * std::max(1.0, q_.trace() / nparams_);
    q_.diagonal().array() += reg;
    qllt_.compute(q_);
    if (qllt_.info() != Eigen::Success) return false;
    if (neq_ > 0) {
      RMat at(nparams_, neq_);
      for (int r = 0; r < neq_; ++r) {
        RVec col = RVec::Zero(nparams_);
        for (const auto& [p, v] : eq_rows_[r]) col(p) = v;
        at.col(r) = col;
      }
      const RMat qinv_at = qllt_.solve(at);
      RMat m = at.transpose() * qinv_at;
      m.diagonal().array() += 1e-13 * std::max(1.0, m.trace() / neq_);
      mllt_.compute(m);
      if (mllt_.info() != Eigen::Success) return false;
    }
    return true;
  }

  // Symmetric square root factor L with m = L L'; prefers Cholesky.
  static bool sqrt_factor(const RMat& m, RMat& l) {
    Eigen::LLT<RMat> llt(m);
    if (llt.info() == Eigen::Success) {
      l = llt.matrixL();
      return true;
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(m);
    if (es.info() != Eigen::Success) return false;
    const double top = es.eigenvalues().maxCoeff();
    if (!(top > 0)) return false;
    RVec vals = es.eigenvalues().cwiseMax(1e-14 * top);
    l = es.eigenvectors() * vals.cwiseSqrt().asDiagonal();
    return true;
  }

  bool compute_scalings() {
    for (auto& w : blocks_) {
      RMat ls, lz;
      if (!sqrt_factor(w.s, ls) || !sqrt_factor(w.z, lz)) return false;
      const RMat prod = lz.transpose() * ls;
      RVec sv;
      RMat u, v;
      if (prod.rows() >= 24) {
        Eigen::BDCSVD<RMat> svd(prod,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
      } else {
        Eigen::JacobiSVD<RMat> svd(prod,
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
        sv = svd.singularValues();
        u = svd.matrixU();
        v = svd.matrixV();
      }
      w.lambda = sv;
      const double floor = 1e-150;
      RVec inv_sqrt = w.lambda.cwiseMax(floor).cwiseSqrt().cwiseInverse();
      w.r.noalias() = ls * v * inv_sqrt.asDiagonal();
      w.rinv.noalias() = inv_sqrt.asDiagonal() * u.transpose() * lz.transpose();
      w.v.noalias() = w.rinv.transpose() * w.rinv;
    }
    return true;
  }

  static double step_to_boundary(const RVec& lambda, const RMat& scaled_dir) {
    const RVec inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
    const RMat m =
        inv_sqrt.asDiagonal() * scaled_dir * inv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues().minCoeff();
    if (mineig >= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (-mineig);
  }

  SolverOptions opts_;
  int nparams_ = 0;
  Sense sense_;
  RVec c_;
  RVec b_ = RVec::Zero(0);
  std::vector<std::vector<std::pair<int, double>>> eq_rows_;
  int neq_ = 0;
  std::vector<BlockWork> blocks_;
  int rank_ = 0;
  double h_norm_ = 0.0;

  RMat q_;
  Eigen::LLT<RMat> qllt_;
  Eigen::LLT<RMat> mllt_;
};

RealSolution Solver::run() {
  RealSolution sol;
  sol.x = RVec::Zero(nparams_);
  if (blocks_.empty()) {
    sol.detail = "no conic blocks";
    return sol;
  }

  // --- initial point (identity scaling) ---
  for (auto& w : blocks_) {
    const int d = w.data.dim;
    w.r = w.rinv = w.v = RMat::Identity(d, d);
    w.lambda = RVec::Ones(d);
  }
  if (!factor_kkt()) {
    sol.detail = "initial KKT factorization failed";
    return sol;
  }

  RVec x(nparams_), y, dx, dy;
  std::vector<RMat> bz2(blocks_.size()), dz;

  // primal: least-norm slack, then shift into the cone
  for (size_t bi = 0; bi < blocks_.size(); ++bi) bz2[bi] = blocks_[bi].data.constant;
  if (!solve3(RVec::Zero(nparams_), b_, bz2, x, y, dz)) {
    sol.detail = "initialization failed";
    return sol;
  }
  double shift = 0.0;
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    Eigen::SelfAdjointEigenSolver<RMat> es(-dz[bi], Eigen::EigenvaluesOnly);
    shift = std::max(shift, -es.eigenvalues().minCoeff());
  }
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    blocks_[bi].s = -dz[bi];
    if (shift > 0.0) {
      blocks_[bi].s += (1.0 + shift) * RMat::Identity(blocks_[bi].data.dim,
                                                      blocks_[bi].data.dim);
    }
  }
  // dual: least-norm multiplier, then shift
  RVec xt;
  for (auto& m : bz2) m.setZero();
  if (!solve3(-c_, RVec::Zero(neq_), bz2, xt, y, dz)) {
    sol.detail = "initialization failed";
    return sol;
  }
  shift = 0.0;
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    Eigen::SelfAdjointEigenSolver<RMat> es(dz[bi], Eigen::EigenvaluesOnly);
    shift = std::max(shift, -es.eigenvalues().minCoeff());
  }
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    blocks_[bi].z = dz[bi];
    if (shift > 0.0) {
      blocks_[bi].z += (1.0 + shift) * RMat::Identity(blocks_[bi].data.dim,
                                                      blocks_[bi].data.dim);
    }
  }

  const double c_norm = std::max(1.0, c_.norm());
  const double b_norm = std::max(1.0, b_.norm());
  const double h_den = std::max(1.0, h_norm_);

  auto user_obj = [&](double v) { return sense_ == Sense::Maximize ? -v : v; };

  RealSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  int no_progress = 0;

  for (int iter = 0; iter <= opts_.max_iters; ++iter) {
    // residuals
    RVec rx = c_ + apply_at(y);
    double gap = 0.0;
    double rz_norm2 = 0.0;
    std::vector<RMat> rz(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      BlockWork& w = blocks_[bi];
      RVec g = RVec::Zero(nparams_);
      accumulate_ft(w, w.z, g);
      rx -= g;
      rz[bi] = w.s - w.data.constant - apply_f(w, x);
      rz_norm2 += rz[bi].squaredNorm();
      gap += (w.s.cwiseProduct(w.z)).sum();
    }
    const RVec ry = neq_ > 0 ? RVec(apply_a(x) - b_) : RVec::Zero(0);

    const double pcost = c_.dot(x);
    double hz = 0.0;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      hz += (blocks_[bi].data.constant.cwiseProduct(blocks_[bi].z)).sum();
    }
    const double dcost = -hz - (neq_ > 0 ? b_.dot(y) : 0.0);
    const double relgap = gap / std::max(1.0, std::abs(pcost));
    const double pres =
        std::max(neq_ > 0 ? ry.norm() / b_norm : 0.0, std::sqrt(rz_norm2) / h_den);
    const double dres = rx.norm() / c_norm;

    sol.x = x;
    sol.primal_obj = user_obj(pcost);
    sol.dual_obj = user_obj(dcost);
    sol.gap_rel = relgap;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.iterations = iter;

    if (opts_.verbose) {
      std::ostringstream os;
      os << "iter " << iter << " pcost " << pcost << " dcost " << dcost
         << " gap " << relgap << " pres " << pres << " dres " << dres;
      sol.detail = os.str();
    }

    // keep the best iterate seen; late iterations can drift on degenerate
    // optimal faces
    const double score =
        std::max({pres / opts_.feas_tol, dres / opts_.feas_tol,
                  std::abs(relgap) / opts_.gap_tol});
    if (score < 0.99 * best_score) {
      best_score = score;
      best = sol;
      no_progress = 0;
    } else {
      ++no_progress;
    }

    if (pres <= opts_.feas_tol && dres <= opts_.feas_tol &&
        relgap <= opts_.gap_tol) {
      sol.status = SolveStatus::Optimal;
      return sol;
    }

    // infeasibility certificates
    const double cert_p = -hz - (neq_ > 0 ? b_.dot(y) : 0.0);
    if (cert_p > 0.0) {
      const double res = (c_ - rx).norm();  // = ||A'y - F'z||
      if (res / c_norm / cert_p <= opts_.feas_tol * 1e-2) {
        sol.status = SolveStatus::Infeasible;
        sol.detail = "primal infeasibility certificate";
        return sol;
      }
    }
    if (-pcost > 0.0) {
      double res2 = neq_ > 0 ? apply_a(x).squaredNorm() : 0.0;
      for (size_t bi = 0; bi < blocks_.size(); ++bi) {
        res2 += (blocks_[bi].s - apply_f(blocks_[bi], x)).squaredNorm();
      }
      if (std::sqrt(res2) / h_den / (-pcost) <= opts_.feas_tol * 1e-2) {
        sol.status = SolveStatus::NumericalFailure;
        sol.detail = "problem appears unbounded (dual infeasible)";
        return sol;
      }
    }

    if (iter == opts_.max_iters) break;
    if (no_progress >= 6) {
      sol.detail = "stalled progress";
      break;
    }

    const double mu = gap / rank_;
    if (!(mu > 0)) {
      sol.detail = "complementarity collapsed";
      break;
    }

    if (!compute_scalings() || !factor_kkt()) {
      sol.detail = "KKT factorization failed";
      break;
    }

    // predictor
    const RVec bx = -rx;
    const RVec by = neq_ > 0 ? RVec(-ry) : RVec::Zero(0);
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      bz2[bi] = -rz[bi] + blocks_[bi].s;
    }
    std::vector<RMat> ds(blocks_.size());
    if (!solve3(bx, by, bz2, dx, dy, dz)) {
      sol.detail = "Newton solve failed";
      break;
    }
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      ds[bi] = -rz[bi] + apply_f(blocks_[bi], dx);
    }

    double alpha_max = std::numeric_limits<double>::infinity();
    std::vector<RMat> p_scaled(blocks_.size()), d_scaled(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      BlockWork& w = blocks_[bi];
      p_scaled[bi] = w.rinv * ds[bi] * w.rinv.transpose();
      d_scaled[bi] = w.r.transpose() * dz[bi] * w.r;
      alpha_max = std::min(alpha_max, step_to_boundary(w.lambda, p_scaled[bi]));
      alpha_max = std::min(alpha_max, step_to_boundary(w.lambda, d_scaled[bi]));
    }
    const double alpha_aff = std::min(1.0, alpha_max);
    double gap_aff = 0.0;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      const RMat s_aff = blocks_[bi].s + alpha_aff * ds[bi];
      const RMat z_aff = blocks_[bi].z + alpha_aff * dz[bi];
      gap_aff += (s_aff.cwiseProduct(z_aff)).sum();
    }
    double sigma = std::pow(std::max(0.0, gap_aff / gap), 3.0);
    // do not drive the gap far below the target: the Newton data becomes
    // noise-dominated there and feasibility residuals degrade
    const double gap_floor =
        0.01 * opts_.gap_tol * std::max(1.0, std::abs(pcost));
    if (gap > 0.0 && gap_floor > 0.0) {
      sigma = std::max(sigma, std::min(1.0, gap_floor / gap));
    }
    sigma = std::min(1.0, sigma);

    // combined step (same residual rhs, corrected complementarity)
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      BlockWork& w = blocks_[bi];
      const int d = w.data.dim;
      RMat bs =
          -0.5 * (p_scaled[bi] * d_scaled[bi] + d_scaled[bi] * p_scaled[bi]);
      bs.diagonal() -= w.lambda.cwiseProduct(w.lambda);
      bs.diagonal().array() += sigma * mu;
      RMat dmat(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          dmat(i, j) = bs(i, j) / (0.5 * (w.lambda(i) + w.lambda(j)));
        }
      }
      bz2[bi] = -rz[bi] - w.r * dmat * w.r.transpose();
    }
    if (!solve3(bx, by, bz2, dx, dy, dz)) {
      sol.detail = "Newton solve failed";
      break;
    }
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      ds[bi] = -rz[bi] + apply_f(blocks_[bi], dx);
    }
    alpha_max = std::numeric_limits<double>::infinity();
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      BlockWork& w = blocks_[bi];
      const RMat p = w.rinv * ds[bi] * w.rinv.transpose();
      const RMat dd = w.r.transpose() * dz[bi] * w.r;
      alpha_max = std::min(alpha_max, step_to_boundary(w.lambda, p));
      alpha_max = std::min(alpha_max, step_to_boundary(w.lambda, dd));
    }
    const double alpha = std::min(1.0, 0.99 * alpha_max);
    if (!(alpha > 1e-10)) {
      sol.detail = "step length collapsed";
      break;
    }
    x += alpha * dx;
    if (neq_ > 0) y += alpha * dy;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      blocks_[bi].s += alpha * ds[bi];
      blocks_[bi].z += alpha * dz[bi];
    }
  }

  if (best_score < std::numeric_limits<double>::infinity()) {
    const std::string detail = sol.detail;
    sol = best;
    sol.detail = detail;
  }
  if (sol.primal_residual <= opts_.feas_tol &&
      sol.dual_residual <= opts_.feas_tol && sol.gap_rel <= opts_.gap_tol) {
    sol.status = SolveStatus::Optimal;
  } else if (sol.primal_residual <= 1e-6 && sol.dual_residual <= 1e-6 &&
             sol.gap_rel <= 1e-5) {
    sol.status = SolveStatus::NearOptimal;
  } else {
    sol.status = SolveStatus::NumericalFailure;
    if (sol.detail.empty()) sol.detail = "did not converge";
  }
  return sol;
}

}  // namespace

RealSolution solve_real(const RealForm& f, const SolverOptions& opts) {
  if (f.nparams == 0) {
    RealSolution s;
    s.detail = "empty problem";
    return s;
  }
  Solver solver(f, opts);
  return solver.run();
}

}  // namespace bellcert::sdp
