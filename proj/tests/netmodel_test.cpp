#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghzline/mcoracle.hpp"
#include "ghzline/netmodel.hpp"
#include "support.hpp"

namespace {

using namespace ghzline::netmodel;

TEST(Xi, Examples) {
  EXPECT_DOUBLE_EQ(xi(oracle::perfect_trio(), Node::A, false), 1.0);
  EXPECT_DOUBLE_EQ(xi(oracle::trio(0.5, 0.01, 1, 1, 1), Node::A, false), 0.005);
  auto cfg = oracle::trio(1, 1, 0.8, 1, 1);
  cfg.memory = MemoryParams{0.9, 2.5};
  EXPECT_NEAR(xi(cfg, Node::B, true), 0.72, 1e-15);
  EXPECT_DOUBLE_EQ(xi(cfg, Node::B, false), 0.8);
  EXPECT_THROW(xi(oracle::perfect_trio(), Node::B, true), std::invalid_argument);
}

TEST(XiPrime, Examples) {
  EXPECT_DOUBLE_EQ(xi_prime(1.0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(xi_prime(0.0, 0.0), 0.0);
  EXPECT_NEAR(xi_prime(0.5, 0.01), 0.50995, 1e-15);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const double x = oracle::uniform(rng, 0, 1);
    EXPECT_EQ(xi_prime(x, 0.0), x);
  }
}

TEST(DarkCountAlpha, Examples) {
  EXPECT_DOUBLE_EQ(dark_count_alpha(0.3, xi_prime(0.3, 0.0), 0.0), 0.0);
  EXPECT_NEAR(dark_count_alpha(1.0, xi_prime(1.0, 0.1), 0.1), 0.1, 1e-15);

  // Direct evaluation: xi' = 1 - 0.995 (1 - 1e-5)^2, alpha = 1 - 0.005 (1 - 1e-5) / xi'.
  const double xp = 1.0 - 0.995 * (1.0 - 1e-5) * (1.0 - 1e-5);
  EXPECT_NEAR(xp, 0.0050199, 1e-7);
  const double expected = 1.0 - 0.005 * (1.0 - 1e-5) / xp;
  // The literal form above cancels to about 1e-14 relative, so compare loosely.
  EXPECT_NEAR(dark_count_alpha(0.005, xi_prime(0.005, 1e-5), 1e-5), expected, 1e-12);
  EXPECT_NEAR(expected, 3.97e-3, 1e-5);

  EXPECT_THROW(dark_count_alpha(0.0, 0.0, 0.0), std::domain_error);
}

TEST(DarkCountAlpha, OuterNodesSufferMore) {
  auto cfg = oracle::trio(0.6, 0.01, 0.6, 0.6, 0.02);
  cfg.node_a.dark_count_prob = cfg.node_b.dark_count_prob = cfg.node_c.dark_count_prob = 1e-6;
  EXPECT_GT(node_dark_count_alpha(cfg, Node::A, false), node_dark_count_alpha(cfg, Node::B, false));
  EXPECT_GT(node_dark_count_alpha(cfg, Node::C, false), node_dark_count_alpha(cfg, Node::B, false));
}

TEST(Yield, MemorylessExamples) {
  EXPECT_DOUBLE_EQ(yield_memoryless(oracle::perfect_trio()), 1.0);
  // xi'_A = xi'_C = 6e-3, xi'_B = 0.1
  const auto cfg = oracle::trio(0.6, 0.01, 0.1, 0.6, 0.01);
  EXPECT_NEAR(yield_memoryless(cfg), 3.6e-7, 1e-20);
  EXPECT_DOUBLE_EQ(yield_memoryless(oracle::trio(0, 1, 1, 1, 1)), 0.0);
}

TEST(Yield, QmExamples) {
  auto perfect = oracle::perfect_trio();
  perfect.memory = MemoryParams{1.0, 2.5};
  EXPECT_NEAR(yield_qm(perfect), 1.0, 1e-15);

  auto cfg = oracle::trio(0.6, 0.01, 1.0, 0.6, 0.01);
  cfg.memory = MemoryParams{0.1, 2.5};
  const double e = oracle::expected_max_series(6e-3, 6e-3);
  EXPECT_NEAR(yield_qm(cfg), 0.01 / e, 1e-15);
  EXPECT_NEAR(yield_qm(cfg), 4.00e-5, 0.01e-5);
  EXPECT_THROW(yield_qm(oracle::perfect_trio()), std::invalid_argument);
}

TEST(Yield, MemoryHelpsInHighLossRegime) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto cfg = oracle::trio(oracle::uniform(rng, 0.1, 1), oracle::uniform(rng, 1e-4, 0.05), oracle::uniform(rng, 0.1, 1),
                            oracle::uniform(rng, 0.1, 1), oracle::uniform(rng, 1e-4, 0.05));
    cfg.node_a.dark_count_prob = oracle::uniform(rng, 0, 1e-5);
    cfg.node_c.dark_count_prob = oracle::uniform(rng, 0, 1e-5);
    cfg.memory = MemoryParams{0.9, 2.5};
    ASSERT_LE(click_probability(cfg, Node::A, false), 0.05);
    ASSERT_LE(click_probability(cfg, Node::C, false), 0.05);
    EXPECT_GT(yield_qm(cfg), yield_memoryless(cfg));
  }
}

TEST(ExpectedMax, Examples) {
  EXPECT_DOUBLE_EQ(expected_max_geometric(1, 1), 1.0);
  EXPECT_NEAR(expected_max_geometric(0.5, 0.5), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(oracle::expected_max_series(0.5, 0.5), 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(expected_max_geometric(1, 0.1), 10.0, 1e-12);
  EXPECT_THROW(expected_max_geometric(0, 0.5), std::domain_error);
}

TEST(ExpectedMax, SymmetricIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const double p = oracle::uniform(rng, 1e-3, 1);
    // 2/p - 1/(p(2 - p)) collapses to (3 - 2p) / (p(2 - p)).
    const double identity = (3 - 2 * p) / (p * (2 - p));
    EXPECT_NEAR(expected_max_geometric(p, p), identity, 1e-12 * identity);
  }
}

TEST(ExpectedMax, MatchesSeries) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const double pa = oracle::uniform(rng, 0.01, 1), pc = oracle::uniform(rng, 0.01, 1);
    const double series = oracle::expected_max_series(pa, pc);
    EXPECT_NEAR(expected_max_geometric(pa, pc), series, 1e-9 * series);
  }
}

TEST(StorageTimes, Examples) {
  auto cfg = oracle::trio(1, 1, 1, 1, 1, 10.0, 90.0);
  const auto st = storage_times(cfg);
  EXPECT_NEAR(st.t_far_s, 9e-4, 1e-18);
  EXPECT_EQ(st.far_node, Node::C);
  EXPECT_EQ(st.near_node, Node::A);

  auto zero = oracle::trio(1, 1, 1, 1, 1, 0.0, 10.0);
  EXPECT_NEAR(storage_times(zero).tau_a_s, 2.5e-8, 1e-22);

  EXPECT_EQ(storage_times(oracle::trio(1, 1, 1, 1, 1, 40, 40)).far_node, Node::C);
  const auto swapped = storage_times(oracle::trio(1, 1, 1, 1, 1, 90, 10));
  EXPECT_EQ(swapped.far_node, Node::A);
  EXPECT_NEAR(swapped.t_far_s, 9e-4, 1e-18);
}

TrioConfig memory_trio(double pa, double pc, double l_ab, double l_bc, double t2) {
  auto cfg = oracle::trio(pa, 1, 1, pc, 1, l_ab, l_bc);
  cfg.memory = MemoryParams{0.9, t2};
  return cfg;
}

double oracle_factor(const TrioConfig& cfg) {
  const auto st = storage_times(cfg);
  const double t2 = cfg.memory->t2_s;
  const double tau_far = st.far_node == Node::A ? st.tau_a_s : st.tau_c_s;
  const double l_near = st.near_node == Node::A ? cfg.link_ab.length_km : cfg.link_bc.length_km;
  return oracle::dephasing_factor_series(click_probability(cfg, st.near_node, false),
                                         click_probability(cfg, st.far_node, false), std::exp(-tau_far / t2),
                                         std::exp(-2 * l_near / (cfg.speed_of_light_km_s * t2)));
}

TEST(DephasingFactor, MatchesJointPmfSum) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto cfg = memory_trio(oracle::uniform(rng, 0.03, 1), oracle::uniform(rng, 0.03, 1),
                                 oracle::uniform(rng, 1, 150), oracle::uniform(rng, 1, 150),
                                 oracle::uniform(rng, 1e-3, 5));
    EXPECT_NEAR(expected_dephasing_factor_near(cfg), oracle_factor(cfg), 1e-10);
  }
}

TEST(DephasingFactor, LongCoherenceLimit) {
  const auto cfg = memory_trio(0.01, 0.02, 80, 95, 1e12);
  EXPECT_NEAR(expected_dephasing_factor_near(cfg), 1.0, 1e-9);
  EXPECT_NEAR(lambda_from_factor(expected_dephasing_factor_near(cfg)), 0.0, 1e-9);
}

TEST(DephasingFactor, CertainClicksLeaveOnlyLatency) {
  const auto cfg = memory_trio(1, 1, 30, 70, 2.5);
  EXPECT_NEAR(expected_dephasing_factor_near(cfg), std::exp(-2 * 30.0 / (2e5 * 2.5)), 1e-15);
}

TEST(DephasingFactor, MonotoneInDecoherenceRate) {
  for (double pa : {0.01, 0.1, 0.7})
    for (double pc : {0.02, 0.3}) {
      double prev = 2.0;
      for (double t2 : {100.0, 20.0, 10.0, 2.5, 1.0, 0.1, 0.01, 1e-3}) {
        const double f = expected_dephasing_factor_near(memory_trio(pa, pc, 50, 90, t2));
        EXPECT_LE(f, prev) << pa << " " << pc << " " << t2;
        EXPECT_GT(f, 0.0);
        prev = f;
      }
    }
}

TEST(DephasingFactor, AgreesWithMonteCarlo) {
  // tau_C = 1e-3 s via a slow source; near link of zero length.
  auto cfg = memory_trio(0.5, 0.5, 1e-9, 1e-9, 2.5);
  cfg.source.frequency_hz = 1e3;
  ASSERT_NEAR(storage_times(cfg).tau_c_s, 1e-3, 1e-12);
  const auto mc = ghzline::mc::mc_dephasing_factor(cfg, 1'000'000, 99);
  EXPECT_LE(std::abs(expected_dephasing_factor_near(cfg) - mc.estimate), 3 * mc.standard_error);
}

TEST(DephasingFactor, SimplifiedVariantDiffersByNearProbability) {
  const auto cfg = memory_trio(0.2, 0.05, 40, 90, 2.5);
  const double p_near = click_probability(cfg, Node::A, false);
  EXPECT_NEAR(expected_dephasing_factor_near(cfg), p_near * expected_dephasing_factor_near_simplified(cfg), 1e-15);
}

TEST(LambdaDp, Examples) {
  EXPECT_DOUBLE_EQ(lambda_dp(0, 2.5), 0.0);
  EXPECT_NEAR(lambda_dp(2.5 * std::log(2.0), 2.5), 0.25, 1e-15);
  EXPECT_NEAR(lambda_dp(1e6, 2.5), 0.5, 1e-15);
  EXPECT_THROW(lambda_dp(-1, 2.5), std::invalid_argument);
  EXPECT_THROW(lambda_dp(1, 0), std::invalid_argument);
}

TEST(Decibels, RoundTrip) {
  EXPECT_NEAR(transmission_from_loss_db(10), 0.1, 1e-16);
  EXPECT_NEAR(transmission_from_loss_db(0), 1.0, 0);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const double db = oracle::uniform(rng, 0, 60);
    const double t = transmission_from_loss_db(db);
    EXPECT_NEAR(t, std::pow(10.0, -db / 10), 1e-12 * t);
    EXPECT_NEAR(loss_db_from_transmission(t), db, 1e-12);
  }
}

TEST(TrioConfig, ViolationsNameTheField) {
  auto cfg = oracle::perfect_trio();
  cfg.link_ab.transmission = 1.5;
  cfg.node_c.dark_count_prob = 1.0;
  const auto v = cfg.violations();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NE(v[0].find("nodes.C.dark_count_prob"), std::string::npos);
  EXPECT_NE(v[1].find("links.AB.transmission"), std::string::npos);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
