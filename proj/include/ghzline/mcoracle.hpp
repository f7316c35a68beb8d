#pragma once

// Attempt-level Monte Carlo of the entanglement-generation process, used
// as an independent oracle for the closed forms in netmodel.
//
// Random numbers: std::mt19937_64, one stream per fixed-size chunk of
// samples. The stream for chunk k is seeded with splitmix64 applied to
// (seed, k), so the sample sequence depends only on (seed, n), never on
// the worker count.

#include <cstdint>
#include <random>

#include "ghzline/netmodel.hpp"
#include "ghzline/parallel.hpp"

namespace ghzline::mc {

struct McResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t num_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kChunkSize = 1u << 14;
inline constexpr std::uint64_t kMinSamples = 1000;

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator for chunk `chunk` of a run with master seed `seed`.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t chunk);

  /// Uniform double in (0, 1].
  double uniform_open0();
  /// Bernoulli trial with success probability p.
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

/// Number of trials up to and including the first success, by inverse CDF.
/// Throws std::domain_error unless 0 < p <= 1.
std::uint64_t sample_geometric(double p, Stream& rng);

/// Mean of max(N_A, N_C) over n samples.
McResult mc_expected_max(double p_a, double p_c, std::uint64_t n, std::uint64_t seed, ExecOptions exec = {});

/// Mean of exp(-t_near / T2) with t_near = |N_near - N_far| tau_far + 2 L_near / c.
McResult mc_dephasing_factor(const netmodel::TrioConfig& cfg, std::uint64_t n, std::uint64_t seed,
                             ExecOptions exec = {});

/// Fraction of rounds where the A, B, B and C detectors all click.
McResult mc_yield_memoryless(const netmodel::TrioConfig& cfg, std::uint64_t n, std::uint64_t seed,
                             ExecOptions exec = {});

}  // namespace ghzline::mc
