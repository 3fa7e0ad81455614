#include "bellcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "bellcert/parallel.hpp"
#include "bellcert/rng.hpp"

namespace bellcert::certify {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kEntropyEqTol = 1e-6;  // method-1 termination |S - H|

using bell::BellSpec;
using bell::Povm;
using quantum::BipartiteState;
using quantum::Hermitian;

struct FixedContext {
  std::vector<Povm> alice;
  std::vector<Povm> bob;
  Hermitian b;
  bool real;
};

FixedContext fixed_context(const BellSpec& spec) {
  if (!spec.has_angles()) {
    throw DomainError("spec '" + spec.name +
                      "' has no optimal angles; fixed-measurement methods "
                      "need them");
  }
  FixedContext ctx{bell::povms_from_angles(spec.alice_angles),
                   bell::povms_from_angles(spec.bob_angles),
                   bell::bell_operator_matrix(
                       spec, bell::povms_from_angles(spec.alice_angles),
                       bell::povms_from_angles(spec.bob_angles)),
                   false};
  ctx.real = ctx.b.is_real(1e-13);
  return ctx;
}

CertificationResult::Status map_status(const sdp::SdpSolution& sol) {
  return sol.ok() ? CertificationResult::Status::Converged
                  : CertificationResult::Status::NumericalFailure;
}

Povm clip_binary_povm(const CMat& m0_raw) {
  const int d = static_cast<int>(m0_raw.rows());
  Eigen::SelfAdjointEigenSolver<CMat> es(quantum::hermitize(m0_raw));
  RVec vals = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
  CMat m0 = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  m0 = quantum::hermitize(m0);
  std::vector<Hermitian> elems;
  elems.emplace_back(m0);
  elems.emplace_back(CMat::Identity(d, d) - m0);
  return Povm{std::move(elems)};
}

Povm computational_povm(int d) {
  CMat p = CMat::Zero(d, d);
  p(0, 0) = 1.0;
  std::vector<Hermitian> elems;
  elems.emplace_back(p);
  elems.emplace_back(CMat::Identity(d, d) - p);
  return Povm{std::move(elems)};
}

Povm random_projective_povm(int d, Rng& rng) {
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = Cplx(rng.uniform(), rng.uniform());
  const double n2 = v.squaredNorm();
  CMat p = (v * v.adjoint()) / n2;
  // beyond qubits, binary projective measurements come in both rank splits
  if (d > 2 && (rng.bits() & 1)) p = CMat::Identity(d, d) - p;
  std::vector<Hermitian> elems;
  elems.emplace_back(p);
  elems.emplace_back(CMat::Identity(d, d) - p);
  return Povm{std::move(elems)};
}

// qubit POVM padded into a d-dimensional space; the complement outcome
// absorbs the extra levels so completeness is preserved
Povm embed_qubit_povm(const Povm& p, int d) {
  CMat m0 = CMat::Zero(d, d);
  m0.topLeftCorner(2, 2) = p.elements[0].mat();
  std::vector<Hermitian> elems;
  elems.emplace_back(m0);
  elems.emplace_back(CMat::Identity(d, d) - m0);
  return Povm{std::move(elems)};
}

std::vector<Povm> seeded_party_povms(
    const std::vector<bell::MeasurementSetting>& angles, int d) {
  std::vector<Povm> out;
  for (const auto& a : angles) {
    const Povm qubit = bell::bloch_povm(a);
    out.push_back(d == 2 ? qubit : embed_qubit_povm(qubit, d));
  }
  return out;
}

std::vector<Povm> random_party_povms(int settings, int d, Rng& rng,
                                     bool first_computational) {
  std::vector<Povm> out;
  for (int i = 0; i < settings; ++i) {
    if (i == 0 && first_computational) {
      out.push_back(computational_povm(d));
    } else {
      out.push_back(random_projective_povm(d, rng));
    }
  }
  return out;
}

struct SeesawSnapshot {
  double omega = -std::numeric_limits<double>::infinity();
  std::optional<BipartiteState> state;
  std::vector<Povm> alice;
  std::vector<Povm> bob;
  int cycles = 0;
  bool converged = false;
  bool valid = false;
};

// One full see-saw trajectory from the given initial POVMs. A NaN target
// entropy disables the constraint (Tsirelson mode).
SeesawSnapshot run_seesaw(const BellSpec& spec, double h, int m, int k,
                          int apx, int d, std::vector<Povm> alice,
                          std::vector<Povm> bob,
                          const std::vector<int>& frozen_a,
                          const std::vector<int>& frozen_b, double cycle_tol,
                          int max_cycles) {
  SeesawSnapshot snap;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    const Hermitian b = bell::bell_operator_matrix(spec, alice, bob);
    sdp::SdpProblem p;
    p.set_sense(sdp::Sense::Maximize);
    const sdp::VarHandle rho =
        p.add_density_variable(d, d, b.is_real(1e-13));
    p.add_objective(rho, b.mat());
    if (!std::isnan(h)) {
      relent::append_cvne_constraint(p, rho, d, d, h,
                                     relent::CvneApproxConfig(m, k, apx));
    }
    const sdp::SdpSolution sol = sdp::solve(p);
    if (!sol.ok()) return snap;  // restart failed

    snap.valid = true;
    snap.omega = sol.objective_value;
    snap.state = sanitize_state(sol.values[rho.id], d, d);
    snap.alice = alice;
    snap.bob = bob;
    snap.cycles = cycle;
    if (cycle > 1 && std::abs(snap.omega - prev) < cycle_tol) {
      snap.converged = true;
      return snap;
    }
    prev = snap.omega;

    auto [new_a, va] =
        optimize_measurements(spec, *snap.state, alice, bob, true, frozen_a);
    alice = std::move(new_a);
    auto [new_b, vb] =
        optimize_measurements(spec, *snap.state, bob, alice, false, frozen_b);
    bob = std::move(new_b);
    (void)va;
    (void)vb;
  }
  return snap;
}

// Measurements found by a short unconstrained see-saw; used to seed
// constrained runs for specs without catalog angles. Without this, the
// constrained see-saw often locks onto the classical deterministic vertex
// (product states satisfy every H <= 0 target).
struct TsirelsonSeed {
  bool valid = false;
  std::vector<Povm> alice;
  std::vector<Povm> bob;
};

TsirelsonSeed tsirelson_seed_povms(const BellSpec& spec, int d,
                                   std::uint64_t seed) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  TsirelsonSeed out;
  double best = -std::numeric_limits<double>::infinity();
  const std::vector<int> frozen =
      d == 2 ? std::vector<int>{0} : std::vector<int>{};
  for (int rs = 0; rs < 4; ++rs) {
    Rng rng(seed ^ 0x7b5e151628aed2a6ull, static_cast<std::uint64_t>(rs));
    SeesawSnapshot snap = run_seesaw(
        spec, nan, 1, 0, -1, d, random_party_povms(spec.m_a, d, rng, d == 2),
        random_party_povms(spec.m_b, d, rng, d == 2), frozen, frozen, 1e-8,
        120);
    if (snap.valid && snap.omega > best) {
      best = snap.omega;
      out.alice = snap.alice;
      out.bob = snap.bob;
      out.valid = true;
    }
  }
  return out;
}

}  // namespace

std::string to_string(CertificationResult::Status s) {
  switch (s) {
    case CertificationResult::Status::Converged: return "converged";
    case CertificationResult::Status::IterationCap: return "iteration_cap";
    case CertificationResult::Status::NumericalFailure:
      return "numerical_failure";
  }
  return "?";
}

BipartiteState sanitize_state(const CMat& m, int d_a, int d_b) {
  Eigen::SelfAdjointEigenSolver<CMat> es(quantum::hermitize(m));
  RVec vals = es.eigenvalues().cwiseMax(0.0);
  const double tr = vals.sum();
  if (!(tr > 0)) throw NotPsdError("sanitize_state: zero trace");
  vals /= tr;
  CMat rho = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  return BipartiteState(Hermitian(quantum::hermitize(rho)), d_a, d_b);
}

CertificationResult method1_witness_iteration(const BellSpec& spec, double h,
                                              int max_iters) {
  const FixedContext ctx = fixed_context(spec);
  CertificationResult r;
  r.spec_name = spec.name;
  r.h = h;
  r.method = 1;
  r.apx = 0;
  r.alice_povms = ctx.alice;
  r.bob_povms = ctx.bob;

  std::vector<CMat> cuts;
  double prev_omega = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iters; ++it) {
    sdp::SdpProblem p;
    p.set_sense(sdp::Sense::Maximize);
    const sdp::VarHandle rho = p.add_density_variable(2, 2, ctx.real);
    p.add_objective(rho, ctx.b.mat());
    for (const CMat& w : cuts) p.add_scalar_inequality({{rho, w}}, -h);

    const sdp::SdpSolution sol = sdp::solve(p);
    r.iterations = it;
    if (!sol.ok()) {
      r.status = CertificationResult::Status::NumericalFailure;
      return r;
    }
    // omega^(i) is non-increasing; tolerate only solver-level wobble
    const double omega = std::min(sol.objective_value, prev_omega + 1e-7);
    prev_omega = std::min(prev_omega, omega);
    const BipartiteState sigma = sanitize_state(sol.values[rho.id], 2, 2);
    const double s = quantum::cvne_exact(sigma);

    r.omega = omega;
    r.extremal_state = sigma;
    if (std::abs(s - h) <= kEntropyEqTol || s > h) {
      // entropy criterion met (or the constraint is slack at the optimum)
      r.status = CertificationResult::Status::Converged;
      return r;
    }
    cuts.push_back(witness::regularized_witness(sigma, h).w.mat());
  }
  r.status = CertificationResult::Status::IterationCap;
  return r;
}

CertificationResult method2_fixed_measurements(
    const BellSpec& spec, double h, const relent::CvneApproxConfig& cfg) {
  const FixedContext ctx = fixed_context(spec);
  sdp::SdpProblem p;
  p.set_sense(sdp::Sense::Maximize);
  const sdp::VarHandle rho = p.add_density_variable(2, 2, ctx.real);
  p.add_objective(rho, ctx.b.mat());
  relent::append_cvne_constraint(p, rho, 2, 2, h, cfg);

  const sdp::SdpSolution sol = sdp::solve(p);
  CertificationResult r;
  r.spec_name = spec.name;
  r.h = h;
  r.method = 2;
  r.apx = cfg.apx;
  r.iterations = sol.iterations;
  r.status = map_status(sol);
  if (!sol.ok()) return r;
  r.omega = sol.objective_value;
  r.extremal_state = sanitize_state(sol.values[rho.id], 2, 2);
  r.alice_povms = ctx.alice;
  r.bob_povms = ctx.bob;
  return r;
}

std::pair<std::vector<Povm>, double> optimize_measurements(
    const BellSpec& spec, const BipartiteState& state, std::vector<Povm> party,
    const std::vector<Povm>& other, bool alice_side,
    const std::vector<int>& frozen) {
  const int settings = alice_side ? spec.m_a : spec.m_b;
  const int d = alice_side ? state.d_a() : state.d_b();
  const auto keep = alice_side ? quantum::Subsystem::A : quantum::Subsystem::B;
  if (static_cast<int>(party.size()) != settings) {
    throw DomainError("optimize_measurements: POVM count mismatch");
  }

  // effective operator per setting: K_i = sum_j c_ij Tr_other[(obs_other) rho]
  std::vector<CMat> k_ops(settings, CMat::Zero(d, d));
  const int other_count = alice_side ? spec.m_b : spec.m_a;
  const CMat eye = CMat::Identity(d, d);
  for (int j = 0; j < other_count; ++j) {
    const CMat obs_other = bell::observable(other[j]).mat();
    const CMat embedded = alice_side ? quantum::kron(eye, obs_other)
                                     : quantum::kron(obs_other, eye);
    const CMat reduced = quantum::partial_trace(
        embedded * state.rho().mat(), state.d_a(), state.d_b(), keep);
    for (int i = 0; i < settings; ++i) {
      const double c = alice_side ? spec.coeffs(i, j) : spec.coeffs(j, i);
      if (c != 0.0) k_ops[i] += c * reduced;
    }
  }
  for (auto& k : k_ops) k = quantum::hermitize(k);

  auto is_frozen = [&frozen](int i) {
    return std::find(frozen.begin(), frozen.end(), i) != frozen.end();
  };

  double fixed_value = 0.0;
  std::vector<int> free_settings;
  bool real = true;
  for (int i = 0; i < settings; ++i) {
    if (is_frozen(i)) {
      fixed_value +=
          (bell::observable(party[i]).mat() * k_ops[i]).trace().real();
    } else {
      free_settings.push_back(i);
      real = real && k_ops[i].imag().cwiseAbs().maxCoeff() < 1e-13;
    }
  }
  if (free_settings.empty()) return {std::move(party), fixed_value};

  sdp::SdpProblem p;
  p.set_sense(sdp::Sense::Maximize);
  auto vars = p.add_povm_variables(static_cast<int>(free_settings.size()), d,
                                   real);
  for (size_t fi = 0; fi < free_settings.size(); ++fi) {
    p.add_objective(vars[fi][0], k_ops[free_settings[fi]]);
    p.add_objective(vars[fi][1], -k_ops[free_settings[fi]]);
  }
  const sdp::SdpSolution sol = sdp::solve(p);
  if (!sol.ok()) {
    throw std::runtime_error("optimize_measurements: SDP failed (" +
                             sol.detail + ")");
  }
  for (size_t fi = 0; fi < free_settings.size(); ++fi) {
    party[free_settings[fi]] = clip_binary_povm(sol.values[vars[fi][0].id]);
  }
  return {std::move(party), fixed_value + sol.objective_value};
}

CertificationResult method3_seesaw(const BellSpec& spec, double h,
                                   const relent::CvneApproxConfig& cfg,
                                   const SeesawConfig& ss, int jobs) {
  if (ss.d_a != ss.d_b) throw DomainError("method3: d_A must equal d_B");
  const int d = ss.d_a;
  if (d != 2 && d != 3) throw DomainError("method3: d must be 2 or 3");

  struct Task {
    int apx;
    int restart;   // -1 marks the fixed-angle seed
  };
  TsirelsonSeed unconstrained_seed;
  if (ss.include_fixed_angle_restart && !spec.has_angles()) {
    unconstrained_seed = tsirelson_seed_povms(spec, d, ss.seed);
  }

  std::vector<Task> tasks;
  const std::vector<int> apx_dirs =
      ss.both_apx ? std::vector<int>{-1, +1} : std::vector<int>{cfg.apx};
  for (int apx : apx_dirs) {
    if (ss.include_fixed_angle_restart &&
        (spec.has_angles() || unconstrained_seed.valid)) {
      tasks.push_back({apx, -1});
    }
    for (int rs = 0; rs < ss.restarts; ++rs) tasks.push_back({apx, rs});
  }

  auto run_task = [&](int ti) -> SeesawSnapshot {
    const Task& t = tasks[ti];
    std::vector<Povm> alice, bob;
    std::vector<int> frozen_a, frozen_b;
    if (t.restart < 0) {
      if (spec.has_angles()) {
        alice = seeded_party_povms(spec.alice_angles, d);
        bob = seeded_party_povms(spec.bob_angles, d);
      } else {
        alice = unconstrained_seed.alice;
        bob = unconstrained_seed.bob;
      }
      if (d == 2) {
        frozen_a = {0};
        frozen_b = {0};
      }
    } else {
      Rng rng(ss.seed, static_cast<std::uint64_t>(t.restart) * 2 +
                           (t.apx > 0 ? 1 : 0));
      alice = random_party_povms(spec.m_a, d, rng, d == 2);
      bob = random_party_povms(spec.m_b, d, rng, d == 2);
      if (d == 2) {
        frozen_a = {0};
        frozen_b = {0};
      }
    }
    SeesawSnapshot snap =
        run_seesaw(spec, h, cfg.m, cfg.k, t.apx, d, std::move(alice),
                   std::move(bob), frozen_a, frozen_b, ss.cycle_tol,
                   ss.max_cycles);
    return snap;
  };

  const auto snaps = parallel_map<SeesawSnapshot>(
      static_cast<int>(tasks.size()), jobs, run_task);

  CertificationResult r;
  r.spec_name = spec.name;
  r.h = h;
  r.method = 3;
  int best = -1;
  for (int i = 0; i < static_cast<int>(snaps.size()); ++i) {
    if (!snaps[i].valid) continue;
    if (best < 0 || snaps[i].omega > snaps[best].omega) best = i;
  }
  if (best < 0) {
    r.status = CertificationResult::Status::NumericalFailure;
    return r;
  }
  const SeesawSnapshot& win = snaps[best];
  r.omega = win.omega;
  r.apx = tasks[best].apx;
  r.iterations = win.cycles;
  r.extremal_state = win.state;
  r.alice_povms = win.alice;
  r.bob_povms = win.bob;
  r.status = win.converged ? CertificationResult::Status::Converged
                           : CertificationResult::Status::IterationCap;
  return r;
}

CertificationResult seeded_seesaw(const BellSpec& spec, double h,
                                  const relent::CvneApproxConfig& cfg,
                                  double cycle_tol, int max_cycles) {
  if (!spec.has_angles()) {
    throw DomainError("seeded_seesaw: spec has no optimal angles");
  }
  SeesawSnapshot snap = run_seesaw(
      spec, h, cfg.m, cfg.k, cfg.apx, 2, seeded_party_povms(spec.alice_angles, 2),
      seeded_party_povms(spec.bob_angles, 2), {0}, {0}, cycle_tol, max_cycles);
  CertificationResult r;
  r.spec_name = spec.name;
  r.h = h;
  r.method = 3;
  r.apx = cfg.apx;
  if (!snap.valid) {
    r.status = CertificationResult::Status::NumericalFailure;
    return r;
  }
  r.omega = snap.omega;
  r.iterations = snap.cycles;
  r.extremal_state = snap.state;
  r.alice_povms = snap.alice;
  r.bob_povms = snap.bob;
  r.status = snap.converged ? CertificationResult::Status::Converged
                            : CertificationResult::Status::IterationCap;
  return r;
}

double tsirelson_check(const BellSpec& spec, const SeesawConfig& ss) {
  if (spec.has_angles()) {
    const FixedContext ctx = fixed_context(spec);
    sdp::SdpProblem p;
    p.set_sense(sdp::Sense::Maximize);
    const sdp::VarHandle rho = p.add_density_variable(2, 2, ctx.real);
    p.add_objective(rho, ctx.b.mat());
    const sdp::SdpSolution sol = sdp::solve(p);
    if (!sol.ok()) {
      throw std::runtime_error("tsirelson_check: solve failed (" + sol.detail +
                               ")");
    }
    return sol.objective_value;
  }
  // no angles: see-saw without entropy constraint
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<int> frozen =
      ss.d_a == 2 ? std::vector<int>{0} : std::vector<int>{};
  double best = -std::numeric_limits<double>::infinity();
  for (int rs = 0; rs < ss.restarts; ++rs) {
    Rng rng(ss.seed, static_cast<std::uint64_t>(rs));
    SeesawSnapshot snap = run_seesaw(
        spec, nan, 1, 0, -1, ss.d_a,
        random_party_povms(spec.m_a, ss.d_a, rng, ss.d_a == 2),
        random_party_povms(spec.m_b, ss.d_b, rng, ss.d_b == 2), frozen,
        frozen, ss.cycle_tol, ss.max_cycles);
    if (snap.valid) best = std::max(best, snap.omega);
  }
  if (!std::isfinite(best)) {
    throw std::runtime_error("tsirelson_check: all see-saw restarts failed");
  }
  return best;
}

double entropy_bound_for_bell(const BellSpec& spec, double bell_value,
                              const relent::CvneApproxConfig& cfg) {
  const FixedContext ctx = fixed_context(spec);
  auto attempt = [&](double value) {
    sdp::SdpProblem p;
    p.set_sense(sdp::Sense::Maximize);
    const sdp::VarHandle rho = p.add_density_variable(2, 2, ctx.real);
    const relent::CvneSurrogate s =
        relent::append_cvne_surrogate(p, rho, 2, 2, cfg);
    for (const auto& [tau, coeff] : s.tau_terms) {
      p.add_objective(tau, coeff * CMat::Identity(1, 1));
    }
    p.add_scalar_inequality({{rho, ctx.b.mat()}}, -value);
    return sdp::solve(p);
  };
  sdp::SdpSolution sol = attempt(bell_value);
  // at the Tsirelson endpoint the feasible set has empty interior; backing
  // off enlarges the set, so the bound stays valid for Bell >= bell_value
  for (double back : {1e-6, 1e-5}) {
    if (sol.ok()) break;
    sol = attempt(bell_value - back * std::max(1.0, std::abs(bell_value)));
  }
  if (!sol.ok()) {
    throw std::runtime_error("entropy_bound_for_bell: solve failed (" +
                             sol.detail + ")");
  }
  return sol.objective_value / kLn2;
}

std::optional<double> invert_omega_curve(
    const std::vector<std::pair<double, double>>& h_omega, double bell_value) {
  if (h_omega.empty()) return std::nullopt;
  if (bell_value < h_omega.front().second) return std::nullopt;
  for (size_t i = 0; i + 1 < h_omega.size(); ++i) {
    const auto& [h0, w0] = h_omega[i];
    const auto& [h1, w1] = h_omega[i + 1];
    if (bell_value >= w0 && bell_value < w1) {
      if (w1 - w0 < 1e-12) return h1;
      return h0 + (bell_value - w0) * (h1 - h0) / (w1 - w0);
    }
  }
  return h_omega.back().first;
}

std::vector<VisibilityPoint> visibility_curve(
    const BellSpec& spec, int d, const std::vector<double>& v_grid,
    const relent::CvneApproxConfig& cfg, const SeesawConfig& ss, int jobs,
    const std::vector<double>& h_grid_in) {
  std::vector<double> h_grid = h_grid_in;
  if (h_grid.empty()) {
    const double h_min = -std::log2(double(d));
    for (int i = 0; i <= 10; ++i) h_grid.push_back(h_min * i / 10.0);
  }
  const bool qubit_fixed = (d == 2) && spec.has_angles();

  auto omega_at = [&](int gi) -> double {
    const double h = h_grid[gi];
    if (qubit_fixed) {
      const CertificationResult r = method2_fixed_measurements(spec, h, cfg);
      if (!r.ok()) throw std::runtime_error("visibility_curve: method 2 failed");
      return r.omega;
    }
    SeesawConfig local = ss;
    local.d_a = local.d_b = d;
    const CertificationResult r = method3_seesaw(spec, h, cfg, local, 1);
    if (!r.ok()) throw std::runtime_error("visibility_curve: method 3 failed");
    return r.omega;
  };
  const std::vector<double> omegas = parallel_map<double>(
      static_cast<int>(h_grid.size()), jobs, omega_at);

  std::vector<std::pair<double, double>> curve;
  for (size_t i = 0; i < h_grid.size(); ++i) {
    curve.emplace_back(h_grid[i], omegas[i]);
  }

  std::vector<VisibilityPoint> out;
  for (double v : v_grid) {
    const double target = v * spec.tsirelson_bound;
    VisibilityPoint pt;
    pt.v = v;
    const auto h = invert_omega_curve(curve, target);
    if (h) {
      pt.h_bound = *h;
      pt.certified = true;
    } else {
      pt.h_bound = std::log2(double(d));
      pt.certified = false;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace bellcert::certify
