#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellcert/bell.hpp"
#include "bellcert/relent.hpp"
#include "bellcert/sdp.hpp"
#include "bellcert/witness.hpp"

namespace bellcert::certify {

/// Threshold Bell value omega_H for a target CVNE level H, plus provenance.
struct CertificationResult {
  enum class Status { Converged, IterationCap, NumericalFailure };

  std::string spec_name;
  double h = 0.0;
  double omega = 0.0;
  int method = 0;  // 1 | 2 | 3
  int apx = 0;     // -1 | +1 | 0 (none)
  int iterations = 0;
  std::optional<quantum::BipartiteState> extremal_state;
  std::vector<bell::Povm> alice_povms;  // empty unless recorded
  std::vector<bell::Povm> bob_povms;
  Status status = Status::NumericalFailure;

  bool ok() const { return status != Status::NumericalFailure; }
};

std::string to_string(CertificationResult::Status s);

struct SeesawConfig {
  int restarts = 100;      // per apx direction
  double cycle_tol = 1e-7;
  int max_cycles = 1000;
  std::uint64_t seed = 1;
  int d_a = 2;
  int d_b = 2;
  // extra deterministic restart seeded at the spec's optimal angles
  bool include_fixed_angle_restart = true;
  // run both approximation directions (the paper's scheme); when false only
  // the direction of the supplied CvneApproxConfig is used
  bool both_apx = true;
};

/// Method 1: iterative witness cuts at fixed optimal measurements.
/// Solves max Tr(B sigma) under the accumulated constraints
/// Tr(W sigma) >= H, adding the regularized witness of each optimizer until
/// cvne_exact(sigma) = H within 1e-6 (or the constraint goes slack).
CertificationResult method1_witness_iteration(const bell::BellSpec& spec,
                                              double h, int max_iters = 200);

/// Method 2: single solve with the quadrature CVNE constraint at fixed
/// optimal measurements.
CertificationResult method2_fixed_measurements(
    const bell::BellSpec& spec, double h, const relent::CvneApproxConfig& cfg);

/// Method 3: see-saw over state, Alice POVMs, and Bob POVMs with random
/// restarts; runs both apx directions and reports the maximum omega.
CertificationResult method3_seesaw(const bell::BellSpec& spec, double h,
                                   const relent::CvneApproxConfig& cfg,
                                   const SeesawConfig& ss, int jobs = 1);

/// Deterministic single see-saw ascent seeded at the spec's optimal angles
/// (no random restarts). Its omega always dominates the method-2 value of
/// the same (spec, H, cfg).
CertificationResult seeded_seesaw(const bell::BellSpec& spec, double h,
                                  const relent::CvneApproxConfig& cfg,
                                  double cycle_tol = 1e-7,
                                  int max_cycles = 200);

/// Unconstrained maximum of the Bell operator: fixed optimal angles when the
/// spec carries them, otherwise a see-saw without entropy constraint.
double tsirelson_check(const bell::BellSpec& spec,
                       const SeesawConfig& ss = SeesawConfig{.restarts = 8});

/// Method-2 machinery transposed: the certified CVNE upper bound
/// max S_apx(sigma) subject to Tr(B sigma) >= bell_value, in bits.
double entropy_bound_for_bell(const bell::BellSpec& spec, double bell_value,
                              const relent::CvneApproxConfig& cfg);

struct VisibilityPoint {
  double v = 0.0;
  double h_bound = 0.0;
  bool certified = false;  // false marks the unbounded H = +log2(dA) case
};

/// Inverts a monotone (H, omega) curve by linear interpolation: the tightest
/// H whose threshold omega_H is at most bell_value. Curve points must be
/// ordered by decreasing H.
std::optional<double> invert_omega_curve(
    const std::vector<std::pair<double, double>>& h_omega, double bell_value);

/// Certified CVNE bound as a function of visibility (Bell value v * T):
/// method 2 for qubit specs with angles, see-saw for qutrits.
std::vector<VisibilityPoint> visibility_curve(
    const bell::BellSpec& spec, int d, const std::vector<double>& v_grid,
    const relent::CvneApproxConfig& cfg, const SeesawConfig& ss, int jobs = 1,
    const std::vector<double>& h_grid = {});

/// One see-saw measurement half-step: optimizes one party's POVMs (jointly,
/// one SDP) against a fixed state and the other party's POVMs. Settings
/// listed in `frozen` keep their current value. Returns the updated POVM
/// list and the resulting Bell value.
std::pair<std::vector<bell::Povm>, double> optimize_measurements(
    const bell::BellSpec& spec, const quantum::BipartiteState& state,
    std::vector<bell::Povm> party, const std::vector<bell::Povm>& other,
    bool alice_side, const std::vector<int>& frozen);

/// Projects solver output onto the density-matrix manifold (Hermitian,
/// eigenvalue clipping, unit trace).
quantum::BipartiteState sanitize_state(const CMat& m, int d_a, int d_b);

}  // namespace bellcert::certify
