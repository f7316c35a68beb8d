#include "ghzline/protocol.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace ghzline::protocol {

using netmodel::Node;
using qdm::Complex;
using qdm::DensityMatrix;
using qdm::Outcome;

namespace {

constexpr Complex kI{0.0, 1.0};

qdm::Vector ket3(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b, const Eigen::Vector2cd& c) {
  qdm::Vector out(8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(4 * i + 2 * j + k) = a(i) * b(j) * c(k);
  return out;
}

}  // namespace

void NoiseParams::validate() const {
  std::vector<std::string> problems;
  const auto check = [&problems](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << name << " = " << v << " outside [0, 1]";
      problems.push_back(msg.str());
    }
  };
  check(channel_depolarization, "f_D");
  check(gate_failure, "f_G");
  if (!problems.empty()) throw std::invalid_argument(problems.front());
}

DensityMatrix source_pair_state() {
  const double r = 0.5;  // 1/sqrt(2) * 1/sqrt(2)
  qdm::Vector v(4);
  v << r, r, r, -r;  // |0+> + |1->
  return DensityMatrix::from_amplitudes(v);
}

qdm::PureState target_state(Outcome outcome) {
  using qdm::Basis;
  const auto plus = qdm::basis_eigenvector(Basis::X, Outcome::Plus);
  const auto minus = qdm::basis_eigenvector(Basis::X, Outcome::Minus);
  const auto zero = qdm::basis_eigenvector(Basis::Z, Outcome::Plus);
  const auto one = qdm::basis_eigenvector(Basis::Z, Outcome::Minus);
  const auto py = qdm::basis_eigenvector(Basis::Y, Outcome::Plus);
  const auto my = qdm::basis_eigenvector(Basis::Y, Outcome::Minus);
  qdm::Vector v;
  if (outcome == Outcome::Plus) {
    v = 0.5 * ((1.0 - kI) * ket3(plus, zero, py) + (1.0 + kI) * ket3(minus, one, my));
  } else {
    v = 0.5 * ((1.0 + kI) * ket3(plus, zero, my) + (1.0 - kI) * ket3(minus, one, py));
  }
  return qdm::PureState(std::move(v));
}

std::vector<qdm::PauliString> stabilizer_suite(Outcome outcome) {
  // Conjugating by X on qubit 3 flips every string carrying Y or Z there.
  static constexpr std::array<const char*, 8> kPlus = {"+XZI", "+XIY", "-YXZ", "+YYX",
                                                       "+ZXX", "+ZYZ", "+IZY", "+III"};
  static constexpr std::array<const char*, 8> kMinus = {"+XZI", "-XIY", "+YXZ", "+YYX",
                                                        "+ZXX", "-ZYZ", "-IZY", "+III"};
  const auto& table = outcome == Outcome::Plus ? kPlus : kMinus;
  std::vector<qdm::PauliString> out;
  out.reserve(table.size());
  for (const char* s : table) out.push_back(qdm::PauliString::parse(s));
  return out;
}

MemoryDephasing memory_dephasing(const netmodel::TrioConfig& cfg) {
  const auto st = netmodel::storage_times(cfg);
  const double near = netmodel::lambda_from_factor(netmodel::expected_dephasing_factor_near(cfg));
  const double far = netmodel::lambda_dp(st.t_far_s, cfg.memory.value().t2_s);
  // Qubit 1 waits for A, qubit 2 for C.
  return st.far_node == Node::C ? MemoryDephasing{near, far} : MemoryDephasing{far, near};
}

ProtocolOutcome run_pipeline(const netmodel::TrioConfig& cfg, const NoiseParams& noise, bool use_memory,
                             Outcome selected_outcome) {
  cfg.validate();
  noise.validate();
  if (use_memory && !cfg.memory) {
    throw std::invalid_argument("segment '" + cfg.segment + "' has no quantum memory configured");
  }

  const DensityMatrix pair = source_pair_state();
  DensityMatrix rho = pair.tensor(pair);

  rho = qdm::depolarize(rho, 0, noise.channel_depolarization);
  rho = qdm::depolarize(rho, 3, noise.channel_depolarization);

  if (use_memory) {
    const MemoryDephasing md = memory_dephasing(cfg);
    rho = qdm::dephase(rho, 1, md.lambda_qubit1);
    rho = qdm::dephase(rho, 2, md.lambda_qubit2);
  }

  rho = qdm::noisy_cz(rho, 1, 2, noise.gate_failure);

  const double alpha_a = netmodel::node_dark_count_alpha(cfg, Node::A, false);
  const double alpha_b = netmodel::node_dark_count_alpha(cfg, Node::B, use_memory);
  const double alpha_c = netmodel::node_dark_count_alpha(cfg, Node::C, false);
  rho = qdm::depolarize(rho, 0, alpha_a);
  rho = qdm::depolarize(rho, 1, alpha_b);
  rho = qdm::depolarize(rho, 2, alpha_b);
  rho = qdm::depolarize(rho, 3, alpha_c);

  auto projection = qdm::measure_project(rho, 2, qdm::Basis::Y, selected_outcome);

  ProtocolOutcome out{std::move(projection.state), projection.probability, 0.0, {}, use_memory, selected_outcome};
  out.fidelity = qdm::fidelity_pure(out.state, target_state(selected_outcome));
  for (auto& s : stabilizer_suite(selected_outcome)) {
    const double e = qdm::pauli_expectation(out.state, s);
    out.stabilizers.push_back({std::move(s), e});
  }
  return out;
}

}  // namespace ghzline::protocol
