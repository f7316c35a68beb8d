#pragma once

// QBERs and asymptotic key rates for conference key agreement (CKA),
// anonymous CKA and quantum secret sharing on the delivered 3-qubit state.

#include <string_view>

#include "ghzline/netmodel.hpp"
#include "ghzline/protocol.hpp"
#include "ghzline/qdm.hpp"

namespace ghzline::rates {

enum class KeyProtocol { CKA, ACKA, QSS };
std::string_view to_string(KeyProtocol p);
KeyProtocol parse_key_protocol(std::string_view name);

struct RateReport {
  double yield;
  double fidelity;
  double projection_prob;
  double q_x;
  double q_ab;
  double r_per_attempt;
  double r_per_second;
  KeyProtocol protocol;
  bool memory;
};

/// Base-2 binary entropy with h(0) = h(1) = 0.
double binary_entropy(double x);

/// 1 - <psi+|rho|psi+> - <psi-|rho|psi->, the error rate of the individual
/// X0 Z1 Y3 correlations.
double qber_bipartite(const qdm::DensityMatrix& rho);

/// Weight of the four odd-parity eigenprojectors of Z0 Y1 Z3.
double qber_parity(const qdm::DensityMatrix& rho);

/// (1 - <Z0 Y1 Z3>) / 2; equal to qber_parity by a separate route.
double qber_parity_from_expectation(const qdm::DensityMatrix& rho);

/// Y (1 - h(Q_X) - h(Q_AB)), clamped at zero.
double key_rate(double yield, double q_x, double q_ab);

/// Pipeline (+1 branch) + yield + QBERs + rate for one operating point.
RateReport full_report(const netmodel::TrioConfig& cfg, const protocol::NoiseParams& noise, bool use_memory,
                       KeyProtocol label = KeyProtocol::CKA);

}  // namespace ghzline::rates
