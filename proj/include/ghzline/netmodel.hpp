#pragma once

// Closed-form link, detector and memory analytics for one A-B-C segment:
// click probabilities, dark-count depolarization, yields, attempt-count
// expectations and memory dephasing.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzline::netmodel {

struct NodeParams {
  std::string name;
  double detector_efficiency = 1.0;
  double dark_count_prob = 0.0;  // per detection gate
};

struct LinkParams {
  double length_km = 0.0;
  double transmission = 1.0;
  /// When set, `transmission` was derived from it.
  std::optional<double> loss_db;

  static LinkParams from_loss_db(double length_km, double loss_db);
};

struct MemoryParams {
  double efficiency = 0.9;
  double t2_s = 2.5;
};

struct SourceParams {
  double frequency_hz = 40e6;
  double preparation_time_s() const { return 1.0 / frequency_hz; }
};

inline constexpr double kFiberLightSpeedKmPerS = 2e5;

struct TrioConfig {
  std::string segment;
  NodeParams node_a, node_b, node_c;
  LinkParams link_ab, link_bc;
  SourceParams source;
  std::optional<MemoryParams> memory;
  double speed_of_light_km_s = kFiberLightSpeedKmPerS;

  /// All invariant violations, one message per field; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ConfigError listing every violation.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

enum class Node { A, B, C };
const char* to_string(Node n);

double transmission_from_loss_db(double loss_db);
double loss_db_from_transmission(double transmission);

/// Photon detection probability at a node (link transmission included for
/// the outer nodes; memory efficiency included at B when `with_memory`).
double xi(const TrioConfig& cfg, Node node, bool with_memory);

/// Click probability including dark counts: 1 - (1 - xi)(1 - p_d)^2.
double xi_prime(double xi, double p_dark);

/// Depolarization strength of a click that may be a dark count.
/// Throws std::domain_error when xi_prime is zero.
double dark_count_alpha(double xi, double xi_prime, double p_dark);

/// xi_prime(xi(cfg, node, with_memory), p_d of that node).
double click_probability(const TrioConfig& cfg, Node node, bool with_memory);

/// Dark-count alpha for `node` in the given mode.
double node_dark_count_alpha(const TrioConfig& cfg, Node node, bool with_memory);

/// All four detectors click in the same round.
double yield_memoryless(const TrioConfig& cfg);

/// E[max(N_A, N_C)] for independent geometric attempt counts.
/// Throws std::domain_error for a zero probability.
double expected_max_geometric(double p_a, double p_c);

/// Memory-assisted yield per attempt. Throws std::invalid_argument when the
/// config has no memory.
double yield_qm(const TrioConfig& cfg);

struct StorageTimes {
  double tau_a_s;  // T_p + 2 L_A / c
  double tau_c_s;  // T_p + 2 L_C / c
  double t_far_s;  // 2 L_far / c
  Node far_node;   // outer node with the longer link; ties go to C
  Node near_node;
};
StorageTimes storage_times(const TrioConfig& cfg);

/// E[exp(-t_near / T2)] with t_near = |N_near - N_far| tau_far + 2 L_near / c,
/// summed exactly over the two geometric attempt counts.
double expected_dephasing_factor_near(const TrioConfig& cfg);

/// The simplified form of the same expectation, whose leading factor is
/// xi'_far / (xi'_n + xi'_f - xi'_n xi'_f) instead of
/// xi'_near xi'_far / (...). Kept only for deviation reports; it exceeds
/// one when xi'_near < 1 and T2 is long.
double expected_dephasing_factor_near_simplified(const TrioConfig& cfg);

/// exp(-t_far / T2) for the qubit paired with the far node.
double far_dephasing_factor(const TrioConfig& cfg);

/// (1 - exp(-t / T2)) / 2.
double lambda_dp(double t_s, double t2_s);

/// Dephasing parameter equivalent to an averaged factor E[exp(-t/T2)].
double lambda_from_factor(double factor);

}  // namespace ghzline::netmodel
