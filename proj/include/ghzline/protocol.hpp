#pragma once

// Merging two source pairs at the central node into a three-party state
// that is locally equivalent to GHZ, with and without memories at node B.
//
// Register layout of the four-qubit working state:
//   qubit 0 -> node A, qubits 1 and 2 -> node B, qubit 3 -> node C.
// Qubit 1 is paired with A, qubit 2 with C. After the Y measurement of
// qubit 2 the delivered register holds qubits (0, 1, 3) in that order.

#include <vector>

#include "ghzline/netmodel.hpp"
#include "ghzline/qdm.hpp"

namespace ghzline::protocol {

struct NoiseParams {
  double channel_depolarization = 0.0;  // f_D, per transmitted qubit
  double gate_failure = 0.0;            // f_G, per CZ

  void validate() const;
};

struct StabilizerValue {
  qdm::PauliString op;
  double expectation;
};

struct ProtocolOutcome {
  qdm::DensityMatrix state;  // qubits (0, 1, 3)
  double projection_prob;
  double fidelity;
  std::vector<StabilizerValue> stabilizers;
  bool used_memory;
  qdm::Outcome outcome;
};

/// (|0+> + |1->)/sqrt(2), i.e. CZ |++>.
qdm::DensityMatrix source_pair_state();

/// Ideal delivered state for a Y outcome on qubit 2:
///   +1: ((1 - i)|+,0,+y> + (1 + i)|-,1,-y>) / 2
///   -1: ((1 + i)|+,0,-y> + (1 - i)|-,1,+y>) / 2
/// The -1 state is the +1 state with X applied to qubit 3 (up to phase).
qdm::PureState target_state(qdm::Outcome outcome);

/// The eight-element stabilizer group of target_state(outcome), identity last.
std::vector<qdm::PauliString> stabilizer_suite(qdm::Outcome outcome);

/// Dephasing parameters applied to the two memory qubits.
struct MemoryDephasing {
  double lambda_qubit1;
  double lambda_qubit2;
};
MemoryDephasing memory_dephasing(const netmodel::TrioConfig& cfg);

/// Runs the full noise stack, in order: fiber depolarization (qubits 0, 3),
/// memory dephasing (qubits 1, 2, memory mode only), noisy CZ(1, 2),
/// dark-count depolarization on all four qubits, Y measurement of qubit 2.
/// Throws qdm::ZeroProbabilityBranch, netmodel::ConfigError or
/// std::invalid_argument.
ProtocolOutcome run_pipeline(const netmodel::TrioConfig& cfg, const NoiseParams& noise, bool use_memory,
                             qdm::Outcome selected_outcome = qdm::Outcome::Plus);

}  // namespace ghzline::protocol
