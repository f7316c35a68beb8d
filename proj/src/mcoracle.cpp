#include "ghzline/mcoracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include <omp.h>

namespace ghzline {

int effective_threads(const ExecOptions& opts) {
  if (opts.mode == ExecMode::Serial) return 1;
  return opts.threads > 0 ? opts.threads : omp_get_max_threads();
}

}  // namespace ghzline

namespace ghzline::mc {

namespace {

// Running mean and sum of squared deviations.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

template <class Sampler>
McResult chunked_mean(std::uint64_t n, std::uint64_t seed, const ExecOptions& exec, const Sampler& sample) {
  if (n < kMinSamples) throw std::invalid_argument("Monte Carlo needs at least 1000 samples");
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Moments> parts(chunks);
  const auto run_chunk = [&](std::uint64_t k) {
    Stream rng(seed, k);
    Moments m;
    const std::uint64_t end = std::min(n, (k + 1) * kChunkSize);
    for (std::uint64_t i = k * kChunkSize; i < end; ++i) m.add(sample(rng));
    parts[k] = m;
  };

  if (exec.mode == ExecMode::Serial) {
    for (std::uint64_t k = 0; k < chunks; ++k) run_chunk(k);
  } else {
    const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static) num_threads(effective_threads(exec))
    for (std::int64_t k = 0; k < count; ++k) run_chunk(static_cast<std::uint64_t>(k));
  }

  Moments total;
  for (const auto& p : parts) total.merge(p);
  McResult r;
  r.estimate = total.mean;
  r.standard_error = std::sqrt(total.m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  r.num_samples = n;
  r.seed = seed;
  return r;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t chunk) : engine_(splitmix64(splitmix64(seed) ^ chunk)) {}

double Stream::uniform_open0() {
  // 53 random bits mapped onto {1, ..., 2^53} / 2^53.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

bool Stream::bernoulli(double p) { return uniform_open0() <= p; }

std::uint64_t sample_geometric(double p, Stream& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("geometric success probability must lie in (0, 1]");
  if (p == 1.0) {
    rng.uniform_open0();  // keep the stream position independent of p
    return 1;
  }
  const double k = std::ceil(std::log(rng.uniform_open0()) / std::log1p(-p));
  if (!(k < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

McResult mc_expected_max(double p_a, double p_c, std::uint64_t n, std::uint64_t seed, ExecOptions exec) {
  if (!(p_a > 0.0 && p_a <= 1.0 && p_c > 0.0 && p_c <= 1.0)) {
    throw std::domain_error("attempt success probabilities must lie in (0, 1]");
  }
  return chunked_mean(n, seed, exec, [p_a, p_c](Stream& rng) {
    const auto a = sample_geometric(p_a, rng);
    const auto c = sample_geometric(p_c, rng);
    return static_cast<double>(std::max(a, c));
  });
}

McResult mc_dephasing_factor(const netmodel::TrioConfig& cfg, std::uint64_t n, std::uint64_t seed,
                             ExecOptions exec) {
  if (!cfg.memory) throw std::invalid_argument("segment '" + cfg.segment + "' has no quantum memory configured");
  const double t2 = cfg.memory->t2_s;
  const auto st = netmodel::storage_times(cfg);
  const double p_near = netmodel::click_probability(cfg, st.near_node, false);
  const double p_far = netmodel::click_probability(cfg, st.far_node, false);
  const double tau_far = st.far_node == netmodel::Node::A ? st.tau_a_s : st.tau_c_s;
  const double l_near = st.near_node == netmodel::Node::A ? cfg.link_ab.length_km : cfg.link_bc.length_km;
  const double latency_s = 2.0 * l_near / cfg.speed_of_light_km_s;
  return chunked_mean(n, seed, exec, [=](Stream& rng) {
    const auto a = sample_geometric(p_near, rng);
    const auto c = sample_geometric(p_far, rng);
    const double gap = static_cast<double>(a > c ? a - c : c - a);
    return std::exp(-(gap * tau_far + latency_s) / t2);
  });
}

McResult mc_yield_memoryless(const netmodel::TrioConfig& cfg, std::uint64_t n, std::uint64_t seed,
                             ExecOptions exec) {
  using netmodel::Node;
  const double pa = netmodel::click_probability(cfg, Node::A, false);
  const double pb = netmodel::click_probability(cfg, Node::B, false);
  const double pc = netmodel::click_probability(cfg, Node::C, false);
  return chunked_mean(n, seed, exec, [=](Stream& rng) {
    // Draw all four so the stream advances identically on every round.
    const bool a = rng.bernoulli(pa);
    const bool b1 = rng.bernoulli(pb);
    const bool b2 = rng.bernoulli(pb);
    const bool c = rng.bernoulli(pc);
    return a && b1 && b2 && c ? 1.0 : 0.0;
  });
}

}  // namespace ghzline::mc
