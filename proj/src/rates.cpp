#include "ghzline/rates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzline::rates {

using qdm::Basis;
using qdm::DensityMatrix;
using qdm::Outcome;

namespace {

constexpr qdm::Complex kI{0.0, 1.0};

qdm::Vector ket3(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b, const Eigen::Vector2cd& c) {
  qdm::Vector out(8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(4 * i + 2 * j + k) = a(i) * b(j) * c(k);
  return out;
}

void require_three_qubits(const DensityMatrix& rho) {
  if (rho.num_qubits() != 3) throw std::invalid_argument("QBER needs the 3-qubit delivered state");
}

// |psi+-> = ((1 - i)|+,0,+y> +- (1 + i)|-,1,-y>) / 2
qdm::PureState correlated_state(int sign) {
  const auto plus = qdm::basis_eigenvector(Basis::X, Outcome::Plus);
  const auto minus = qdm::basis_eigenvector(Basis::X, Outcome::Minus);
  const auto zero = qdm::basis_eigenvector(Basis::Z, Outcome::Plus);
  const auto one = qdm::basis_eigenvector(Basis::Z, Outcome::Minus);
  const auto py = qdm::basis_eigenvector(Basis::Y, Outcome::Plus);
  const auto my = qdm::basis_eigenvector(Basis::Y, Outcome::Minus);
  return qdm::PureState(0.5 * ((1.0 - kI) * ket3(plus, zero, py) +
                               static_cast<double>(sign) * (1.0 + kI) * ket3(minus, one, my)));
}

}  // namespace

std::string_view to_string(KeyProtocol p) {
  switch (p) {
    case KeyProtocol::CKA: return "CKA";
    case KeyProtocol::ACKA: return "ACKA";
    case KeyProtocol::QSS: return "QSS";
  }
  return "?";
}

KeyProtocol parse_key_protocol(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cka") return KeyProtocol::CKA;
  if (lower == "acka") return KeyProtocol::ACKA;
  if (lower == "qss") return KeyProtocol::QSS;
  throw std::invalid_argument("unknown key protocol '" + std::string(name) + "'");
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary entropy argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double qber_bipartite(const DensityMatrix& rho) {
  require_three_qubits(rho);
  static const qdm::PureState psi_plus = correlated_state(+1);
  static const qdm::PureState psi_minus = correlated_state(-1);
  const double q = 1.0 - qdm::fidelity_pure(rho, psi_plus) - qdm::fidelity_pure(rho, psi_minus);
  return std::clamp(q, 0.0, 1.0);
}

double qber_parity(const DensityMatrix& rho) {
  require_three_qubits(rho);
  const std::array<Basis, 3> bases = {Basis::Z, Basis::Y, Basis::Z};
  double odd = 0.0;
  for (int k = 0; k < 8; ++k) {
    Eigen::Vector2cd e[3];
    int parity = 1;
    for (int q = 0; q < 3; ++q) {
      const Outcome o = (k >> (2 - q)) & 1 ? Outcome::Minus : Outcome::Plus;
      parity *= qdm::sign_of(o);
      e[q] = qdm::basis_eigenvector(bases[static_cast<std::size_t>(q)], o);
    }
    if (parity > 0) continue;
    const qdm::Vector v = ket3(e[0], e[1], e[2]);
    odd += (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return std::clamp(odd, 0.0, 1.0);
}

double qber_parity_from_expectation(const DensityMatrix& rho) {
  require_three_qubits(rho);
  return 0.5 * (1.0 - qdm::pauli_expectation(rho, qdm::PauliString::parse("ZYZ")));
}

double key_rate(double yield, double q_x, double q_ab) {
  return std::max(0.0, yield * (1.0 - binary_entropy(q_x) - binary_entropy(q_ab)));
}

RateReport full_report(const netmodel::TrioConfig& cfg, const protocol::NoiseParams& noise, bool use_memory,
                       KeyProtocol label) {
  const auto outcome = protocol::run_pipeline(cfg, noise, use_memory, Outcome::Plus);
  RateReport r{};
  r.yield = use_memory ? netmodel::yield_qm(cfg) : netmodel::yield_memoryless(cfg);
  r.fidelity = outcome.fidelity;
  r.projection_prob = outcome.projection_prob;
  r.q_x = qber_parity(outcome.state);
  r.q_ab = qber_bipartite(outcome.state);
  r.r_per_attempt = key_rate(r.yield, r.q_x, r.q_ab);
  r.r_per_second = cfg.source.frequency_hz * r.r_per_attempt;
  r.protocol = label;
  r.memory = use_memory;
  return r;
}

}  // namespace ghzline::rates
