#include "bellcert/bell.hpp"

#include <cmath>
#include <sstream>

namespace bellcert::bell {

using quantum::Hermitian;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::vector<MeasurementSetting> settings(std::initializer_list<double> thetas) {
  std::vector<MeasurementSetting> out;
  for (double t : thetas) out.push_back(normalize_setting(t, 0.0));
  return out;
}

}  // namespace

MeasurementSetting normalize_setting(double theta, double phi) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta > M_PI) {
    theta = kTwoPi - theta;
    phi += M_PI;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return {theta, phi};
}

Povm make_povm(std::vector<quantum::Hermitian> elements) {
  if (elements.empty()) throw DomainError("make_povm: no elements");
  const int d = elements.front().dim();
  CMat sum = CMat::Zero(d, d);
  for (const auto& e : elements) {
    if (e.dim() != d) throw DomainError("make_povm: element dims differ");
    if (e.min_eigenvalue() < -quantum::kPsdTol) {
      throw NotPsdError("make_povm: element is not PSD");
    }
    sum += e.mat();
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > quantum::kPsdTol) {
    throw DomainError("make_povm: elements do not sum to identity");
  }
  return Povm{std::move(elements)};
}

Operator operator_from_name(const std::string& name) {
  std::string n;
  for (char c : name) n.push_back(static_cast<char>(std::tolower(c)));
  if (n == "chsh") return Operator::CHSH;
  if (n == "mchsh") return Operator::MCHSH;
  if (n == "bc3") return Operator::BC3;
  if (n == "i1") return Operator::I1;
  throw UnknownNameError("unknown Bell operator: " + name);
}

std::string operator_name(Operator op) {
  switch (op) {
    case Operator::CHSH: return "CHSH";
    case Operator::MCHSH: return "MCHSH";
    case Operator::BC3: return "BC3";
    case Operator::I1: return "I1";
  }
  return "?";
}

BellSpec builtin_spec(Operator op) {
  BellSpec s;
  s.name = operator_name(op);
  switch (op) {
    case Operator::CHSH: {
      s.m_a = 2;
      s.m_b = 2;
      s.coeffs = RMat::Zero(2, 2);
      s.coeffs << 1, 1, 1, -1;
      s.local_bound = 2.0;
      s.tsirelson_bound = 2.0 * std::sqrt(2.0);
      s.alice_angles = settings({0.0, M_PI / 2});
      s.bob_angles = settings({M_PI / 4, -M_PI / 4});
      break;
    }
    case Operator::MCHSH: {
      // C12 + C13 + C21 + C22 - C23
      s.m_a = 2;
      s.m_b = 3;
      s.coeffs = RMat::Zero(2, 3);
      s.coeffs << 0, 1, 1, 1, 1, -1;
      s.local_bound = 3.0;
      s.tsirelson_bound = 2.0 * std::sqrt(2.0) + 1.0;
      s.alice_angles = settings({0.0, M_PI / 2});
      s.bob_angles = settings({M_PI / 2, M_PI / 4, -M_PI / 4});
      break;
    }
    case Operator::BC3: {
      // C11 + C12 + C22 + C23 + C33 - C31
      s.m_a = 3;
      s.m_b = 3;
      s.coeffs = RMat::Zero(3, 3);
      s.coeffs << 1, 1, 0, 0, 1, 1, -1, 0, 1;
      s.local_bound = 4.0;
      s.tsirelson_bound = 3.0 * std::sqrt(3.0);
      s.alice_angles = settings({M_PI / 6, M_PI / 2, 5 * M_PI / 6});
      s.bob_angles = settings({0.0, M_PI / 3, 2 * M_PI / 3});
      break;
    }
    case Operator::I1: {
      // C12 - C13 - C21 - C22 + C31 + C33 + C41
      s.m_a = 4;
      s.m_b = 3;
      s.coeffs = RMat::Zero(4, 3);
      s.coeffs << 0, 1, -1, -1, -1, 0, 1, 0, 1, 1, 0, 0;
      s.local_bound = 5.0;
      s.tsirelson_bound = 1.0 + 3.0 * std::sqrt(3.0);
      s.alice_angles = settings({0.0, 4 * M_PI / 3, 2 * M_PI / 3, M_PI / 2});
      s.bob_angles = settings({M_PI / 2, M_PI / 6, 5 * M_PI / 6});
      break;
    }
  }
  return s;
}

BellSpec builtin_spec(const std::string& name) {
  return builtin_spec(operator_from_name(name));
}

BellSpec idelta_spec(double delta) {
  if (!(delta > 0.0 && delta <= M_PI / 6.0)) {
    throw DomainError("idelta_spec: delta must lie in (0, pi/6]");
  }
  BellSpec s;
  std::ostringstream name;
  name << "Idelta";
  s.name = name.str();
  s.m_a = 2;
  s.m_b = 2;
  s.coeffs = RMat::Zero(2, 2);
  const double sd = std::sin(delta);
  const double c2d = std::cos(2.0 * delta);
  s.coeffs << 1.0, 1.0 / sd, 1.0 / sd, -1.0 / c2d;
  const double cd = std::cos(delta);
  s.tsirelson_bound = 2.0 * cd * cd * cd / (c2d * sd);
  s.local_bound = -1.0 + 2.0 / sd + 1.0 / c2d;
  s.delta = delta;
  return s;
}

Povm bloch_povm(const MeasurementSetting& s) {
  CVec psi(2);
  psi << std::cos(s.theta / 2.0),
      std::sin(s.theta / 2.0) * std::exp(Cplx(0.0, s.phi));
  CMat p = psi * psi.adjoint();
  std::vector<Hermitian> elems;
  elems.emplace_back(p);
  elems.emplace_back(CMat::Identity(2, 2) - p);
  return Povm{std::move(elems)};
}

Hermitian observable(const Povm& p) {
  if (p.outcomes() != 2) {
    throw ArityError("observable: POVM must have exactly 2 outcomes");
  }
  return Hermitian(p.elements[0].mat() - p.elements[1].mat());
}

std::vector<Povm> povms_from_angles(const std::vector<MeasurementSetting>& angles) {
  std::vector<Povm> out;
  out.reserve(angles.size());
  for (const auto& a : angles) out.push_back(bloch_povm(a));
  return out;
}

Hermitian bell_operator_matrix(const BellSpec& spec,
                               const std::vector<Povm>& alice,
                               const std::vector<Povm>& bob) {
  if (static_cast<int>(alice.size()) != spec.m_a ||
      static_cast<int>(bob.size()) != spec.m_b) {
    throw DomainError("bell_operator_matrix: POVM list sizes must match spec");
  }
  const int da = alice.front().dim();
  const int db = bob.front().dim();
  CMat b = CMat::Zero(da * db, da * db);
  for (int i = 0; i < spec.m_a; ++i) {
    const CMat ai = observable(alice[i]).mat();
    for (int j = 0; j < spec.m_b; ++j) {
      const double c = spec.coeffs(i, j);
      if (c == 0.0) continue;
      b += c * quantum::kron(ai, observable(bob[j]).mat());
    }
  }
  return Hermitian(quantum::hermitize(b));
}

double violation_ratio(double value, const BellSpec& spec) {
  if (spec.local_bound == 0.0) {
    throw DomainError("violation_ratio: local bound is zero");
  }
  return value / spec.local_bound;
}

double critical_visibility(double value, const BellSpec& spec) {
  const double v = value / spec.tsirelson_bound;
  return std::min(1.0, std::max(0.0, v));
}

std::string to_text(const BellSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "name " << spec.name << "\n";
  os << "m_a " << spec.m_a << "\n";
  os << "m_b " << spec.m_b << "\n";
  os << "coeffs";
  for (int i = 0; i < spec.m_a; ++i)
    for (int j = 0; j < spec.m_b; ++j) os << " " << spec.coeffs(i, j);
  os << "\n";
  os << "local_bound " << spec.local_bound << "\n";
  os << "tsirelson_bound " << spec.tsirelson_bound << "\n";
  if (spec.delta) os << "delta " << *spec.delta << "\n";
  auto emit = [&os](const char* key, const std::vector<MeasurementSetting>& v) {
    if (v.empty()) return;
    os << key;
    for (const auto& s : v) os << " " << s.theta << " " << s.phi;
    os << "\n";
  };
  emit("alice_angles", spec.alice_angles);
  emit("bob_angles", spec.bob_angles);
  return os.str();
}

}  // namespace bellcert::bell
