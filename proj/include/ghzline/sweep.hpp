#pragma once

// Cartesian (f_D, f_G) grids over segments, memory modes and T2 values.
// The parallel path fans grid points out over OpenMP threads and writes each
// result into its precomputed slot, so row order and contents match the
// serial reference exactly.

#include <optional>
#include <string>
#include <vector>

#include "ghzline/netmodel.hpp"
#include "ghzline/parallel.hpp"
#include "ghzline/rates.hpp"

namespace ghzline::sweep {

struct Range {
  double min = 0.0;
  double max = 0.3;
  int steps = 11;

  /// steps values from min to max inclusive; a single step yields {min}.
  std::vector<double> values() const;
};

enum class MemoryMode { Off, On };

struct Outputs {
  bool yield = true;
  bool fidelity = true;
  bool key_rate = true;
};

struct SweepSpec {
  Range fd_range;
  Range fg_range;
  std::vector<MemoryMode> memory_modes = {MemoryMode::Off, MemoryMode::On};
  /// Memory-mode T2 values; empty means "the segment's configured T2".
  std::vector<double> t2_values;
  Outputs outputs;
  rates::KeyProtocol protocol = rates::KeyProtocol::CKA;

  /// Throws std::invalid_argument listing the first violation.
  void validate() const;
};

struct SweepRow {
  std::string segment;
  double f_d = 0.0;
  double f_g = 0.0;
  bool memory = false;
  std::optional<double> t2_s;
  std::optional<double> yield;
  std::optional<double> fidelity;
  std::optional<double> q_x;
  std::optional<double> q_ab;
  std::optional<double> r_per_attempt;
  std::optional<double> r_per_second;
  /// Set when this grid point failed; the numeric outputs are then empty.
  std::optional<std::string> error;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Rows ordered by (segment, memory off/on, T2, f_D, f_G).
std::vector<SweepRow> run_sweep(const std::vector<netmodel::TrioConfig>& configs, const SweepSpec& spec,
                                ExecOptions exec = {});

/// Total row count run_sweep will produce.
std::size_t row_count(const std::vector<netmodel::TrioConfig>& configs, const SweepSpec& spec);

}  // namespace ghzline::sweep
