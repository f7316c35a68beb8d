// Serial reference vs OpenMP paths of the two data-parallel kernels.

#include <benchmark/benchmark.h>

#include "ghzline/mcoracle.hpp"
#include "ghzline/sweep.hpp"

namespace {

using namespace ghzline;

netmodel::TrioConfig bench_config() {
  netmodel::TrioConfig cfg;
  cfg.segment = "bench";
  cfg.node_a = {"A", 0.6, 1e-6};
  cfg.node_b = {"B", 0.6, 1e-6};
  cfg.node_c = {"C", 0.6, 1e-6};
  cfg.link_ab = netmodel::LinkParams::from_loss_db(90.0, 20.0);
  cfg.link_bc = netmodel::LinkParams::from_loss_db(91.2, 20.2);
  cfg.memory = netmodel::MemoryParams{0.9, 2.5};
  return cfg;
}

ExecOptions mode_for(const benchmark::State& state) {
  return state.range(0) == 0 ? kSerial : ExecOptions{ExecMode::Parallel, static_cast<int>(state.range(0))};
}

void BM_Sweep(benchmark::State& state) {
  const std::vector<netmodel::TrioConfig> configs = {bench_config()};
  sweep::SweepSpec spec;
  spec.t2_values = {2.5, 10.0};
  for (auto _ : state) {
    auto rows = sweep::run_sweep(configs, spec, mode_for(state));
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sweep::row_count(configs, spec)));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_McDephasing(benchmark::State& state) {
  const auto cfg = bench_config();
  constexpr std::uint64_t n = 1'000'000;
  for (auto _ : state) {
    auto r = mc::mc_dephasing_factor(cfg, n, 42, mode_for(state));
    benchmark::DoNotOptimize(r.estimate);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_McDephasing)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
