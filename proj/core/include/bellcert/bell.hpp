#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellcert/quantum.hpp"
#include "bellcert/types.hpp"

namespace bellcert::bell {

/// Bloch direction of a rank-1 qubit projector: theta in [0, pi],
/// phi in [0, 2*pi). Out-of-range inputs are folded via the
/// (theta, phi) -> (-theta, phi + pi) equivalence.
struct MeasurementSetting {
  double theta = 0.0;
  double phi = 0.0;
};

MeasurementSetting normalize_setting(double theta, double phi);

/// Binary (or generally n-outcome) POVM: PSD elements summing to identity.
struct Povm {
  std::vector<quantum::Hermitian> elements;

  int dim() const { return elements.empty() ? 0 : elements.front().dim(); }
  int outcomes() const { return static_cast<int>(elements.size()); }
};

/// Validates PSD elements (within 1e-9) and completeness.
Povm make_povm(std::vector<quantum::Hermitian> elements);

/// Coefficient table over correlators plus the classical/quantum bounds and,
/// when known, the measurement angles attaining the Tsirelson bound.
struct BellSpec {
  std::string name;
  int m_a = 0;
  int m_b = 0;
  RMat coeffs;  // m_a x m_b
  double local_bound = 0.0;
  double tsirelson_bound = 0.0;
  std::vector<MeasurementSetting> alice_angles;  // empty when unknown
  std::vector<MeasurementSetting> bob_angles;
  std::optional<double> delta;  // set for the I_delta family

  bool has_angles() const { return !alice_angles.empty() && !bob_angles.empty(); }
};

enum class Operator { CHSH, MCHSH, BC3, I1 };

Operator operator_from_name(const std::string& name);
std::string operator_name(Operator op);

/// Catalog entry for one of the four named operators, with the coefficient
/// table, bounds and optimal angles.
BellSpec builtin_spec(Operator op);
BellSpec builtin_spec(const std::string& name);

/// Two-setting family parametrized by delta in (0, pi/6]:
/// c11 = 1, c12 = c21 = 1/sin(delta), c22 = -1/cos(2*delta).
BellSpec idelta_spec(double delta);

/// Projector pair {P, I - P} with P the Bloch vector projector.
Povm bloch_povm(const MeasurementSetting& s);

/// Dichotomic observable elements[0] - elements[1]; requires 2 outcomes.
quantum::Hermitian observable(const Povm& p);

/// POVM list for a party from its Bloch angles (qubits).
std::vector<Povm> povms_from_angles(const std::vector<MeasurementSetting>& angles);

/// B = sum_ij c[i][j] observable(alice[i]) (x) observable(bob[j]).
quantum::Hermitian bell_operator_matrix(const BellSpec& spec,
                                        const std::vector<Povm>& alice,
                                        const std::vector<Povm>& bob);

double violation_ratio(double value, const BellSpec& spec);

/// value / tsirelson_bound, clamped to [0, 1].
double critical_visibility(double value, const BellSpec& spec);

/// Plain-text key-value rendering of a spec (for CLI echo and logs).
std::string to_text(const BellSpec& spec);

}  // namespace bellcert::bell
