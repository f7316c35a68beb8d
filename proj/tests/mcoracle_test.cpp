#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghzline/mcoracle.hpp"
#include "ghzline/netmodel.hpp"
#include "support.hpp"

namespace {

using namespace ghzline;

bool within(double expected, const mc::McResult& r, double k = 3.0) {
  return std::abs(expected - r.estimate) <= k * r.standard_error;
}

TEST(Geometric, CertainSuccess) {
  mc::Stream s(1, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(mc::sample_geometric(1.0, s), 1u);
}

TEST(Geometric, MeanAndPmf) {
  mc::Stream s(2, 0);
  const int n = 1'000'000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(mc::sample_geometric(0.25, s));
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_LE(std::abs(mean - 4.0), 3 * se);

  mc::Stream t(3, 0);
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += mc::sample_geometric(0.3, t) == 1;
  const double p = static_cast<double>(ones) / n;
  EXPECT_LE(std::abs(p - 0.3), 3 * std::sqrt(0.3 * 0.7 / n));
}

TEST(Geometric, SmallProbabilityTail) {
  mc::Stream s(4, 0);
  const int n = 200'000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(mc::sample_geometric(1e-3, s));
  // sd of Geom(p) is sqrt(1-p)/p
  EXPECT_LE(std::abs(sum / n - 1000.0), 3 * std::sqrt(1 - 1e-3) / 1e-3 / std::sqrt(n));
}

TEST(ExpectedMax, Examples) {
  const auto one = mc::mc_expected_max(1, 1, 10'000, 5);
  EXPECT_EQ(one.estimate, 1.0);
  EXPECT_EQ(one.standard_error, 0.0);
  EXPECT_TRUE(within(8.0 / 3.0, mc::mc_expected_max(0.5, 0.5, 1'000'000, 6)));
}

TEST(ExpectedMax, MatchesSeriesOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const double pa = oracle::uniform(rng, 0.01, 1), pc = oracle::uniform(rng, 0.01, 1);
    const auto r = mc::mc_expected_max(pa, pc, 1'000'000, 100 + i);
    EXPECT_TRUE(within(oracle::expected_max_series(pa, pc), r)) << pa << " " << pc;
  }
}

netmodel::TrioConfig memory_cfg(double pa, double pc, double t2) {
  auto cfg = oracle::trio(pa, 1, 1, pc, 1, 70, 90);
  cfg.memory = netmodel::MemoryParams{0.9, t2};
  return cfg;
}

TEST(Dephasing, Examples) {
  const auto r = mc::mc_dephasing_factor(memory_cfg(0.01, 0.02, 1e12), 100'000, 8);
  EXPECT_NEAR(r.estimate, 1.0, 1e-6);
  const auto cfg = memory_cfg(1, 1, 2.5);
  const auto sure = mc::mc_dephasing_factor(cfg, 10'000, 9);
  EXPECT_EQ(sure.estimate, std::exp(-2 * 70.0 / (2e5 * 2.5)));
  EXPECT_EQ(sure.standard_error, 0.0);
  EXPECT_THROW(mc::mc_dephasing_factor(oracle::perfect_trio(), 10'000, 1), std::invalid_argument);
}

TEST(Dephasing, MatchesJointPmfSum) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 5; ++i) {
    const auto cfg = memory_cfg(oracle::uniform(rng, 0.05, 1), oracle::uniform(rng, 0.05, 1), 1e-3);
    const auto st = netmodel::storage_times(cfg);
    const double x = std::exp(-st.tau_c_s / 1e-3);
    const double lat = std::exp(-2 * 70.0 / (2e5 * 1e-3));
    const double ref = oracle::dephasing_factor_series(cfg.node_a.detector_efficiency, cfg.node_c.detector_efficiency,
                                                       x, lat);
    EXPECT_TRUE(within(ref, mc::mc_dephasing_factor(cfg, 1'000'000, 200 + i)));
  }
}

TEST(YieldMemoryless, Examples) {
  EXPECT_EQ(mc::mc_yield_memoryless(oracle::perfect_trio(), 10'000, 11).estimate, 1.0);
  EXPECT_EQ(mc::mc_yield_memoryless(oracle::trio(0, 1, 1, 1, 1), 10'000, 12).estimate, 0.0);
}

TEST(YieldMemoryless, MatchesProduct) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto cfg = oracle::trio(oracle::uniform(rng, 0.3, 1), oracle::uniform(rng, 0.3, 1),
                                  oracle::uniform(rng, 0.3, 1), oracle::uniform(rng, 0.3, 1),
                                  oracle::uniform(rng, 0.3, 1));
    const double y = netmodel::xi(cfg, netmodel::Node::A, false) * std::pow(cfg.node_b.detector_efficiency, 2) *
                     netmodel::xi(cfg, netmodel::Node::C, false);
    EXPECT_TRUE(within(y, mc::mc_yield_memoryless(cfg, 1'000'000, 300 + i)));
  }
}

TEST(Determinism, SameSeedSameBits) {
  const auto cfg = memory_cfg(0.1, 0.2, 0.5);
  const auto a = mc::mc_dephasing_factor(cfg, 200'000, 42);
  const auto b = mc::mc_dephasing_factor(cfg, 200'000, 42);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
  const auto c = mc::mc_dephasing_factor(cfg, 200'000, 43);
  EXPECT_NE(a.estimate, c.estimate);
}

TEST(Determinism, IndependentOfThreadCount) {
  const auto cfg = memory_cfg(0.1, 0.2, 0.5);
  const auto serial = mc::mc_expected_max(0.1, 0.2, 300'001, 44, kSerial);
  const auto ys = mc::mc_yield_memoryless(cfg, 300'001, 45, kSerial);
  const auto ds = mc::mc_dephasing_factor(cfg, 300'001, 46, kSerial);
  for (int threads : {1, 2, 3, 4, 8}) {
    const ExecOptions par{ExecMode::Parallel, threads};
    const auto p = mc::mc_expected_max(0.1, 0.2, 300'001, 44, par);
    EXPECT_EQ(p.estimate, serial.estimate);
    EXPECT_EQ(p.standard_error, serial.standard_error);
    EXPECT_EQ(mc::mc_yield_memoryless(cfg, 300'001, 45, par).estimate, ys.estimate);
    EXPECT_EQ(mc::mc_dephasing_factor(cfg, 300'001, 46, par).estimate, ds.estimate);
  }
}

TEST(StandardError, ScalesWithRootN) {
  const auto small = mc::mc_expected_max(0.2, 0.3, 10'000, 47);
  const auto large = mc::mc_expected_max(0.2, 0.3, 1'000'000, 47);
  const double ratio = large.standard_error / small.standard_error;
  EXPECT_GE(ratio, 0.08);
  EXPECT_LE(ratio, 0.12);
  EXPECT_EQ(large.num_samples, 1'000'000u);
}

TEST(Inputs, Rejected) {
  EXPECT_THROW(mc::mc_expected_max(0.0, 0.5, 10'000, 1), std::domain_error);
  EXPECT_THROW(mc::mc_expected_max(0.5, 0.5, 10, 1), std::invalid_argument);
}

}  // namespace
