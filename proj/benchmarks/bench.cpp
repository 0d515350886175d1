#include <benchmark/benchmark.h>

#include "slicer/analysis.hpp"
#include "slicer/engine.hpp"
#include "slicer/metrics.hpp"
#include "slicer/rng.hpp"
#include "slicer/sampling.hpp"

namespace {

using namespace slicer;

SimulationConfig ordering_config(std::uint32_t n) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.cycles = 1;
  return cfg;
}

SimulationConfig ranking_config(std::uint32_t n) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.protocol = Protocol::ranking;
  cfg.slices = 100;
  cfg.c = 10;
  cfg.cycles = 1;
  return cfg;
}

void bm_ordering_cycle(benchmark::State& state) {
  Simulation sim(ordering_config(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_ordering_cycle)->Arg(1000)->Arg(10000);

void bm_ranking_cycle(benchmark::State& state) {
  Simulation sim(ranking_config(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_ranking_cycle)->Arg(1000)->Arg(10000);

void bm_cyclon_exchange(benchmark::State& state) {
  Rng rng(7);
  View a(1, 20), b(2, 20);
  std::vector<ViewEntry> ea, eb;
  for (std::uint64_t i = 0; i < 20; ++i) {
    ea.push_back({i + 10, static_cast<std::uint32_t>(rng.below(5)), i, rng.unit()});
    eb.push_back({i + 40, static_cast<std::uint32_t>(rng.below(5)), i + 30, rng.unit()});
  }
  a.assign(ea);
  b.assign(eb);
  for (auto _ : state) {
    cyclon_exchange(a, self_descriptor(1, 3, 0.5), b, self_descriptor(2, 77, 0.25), rng);
    benchmark::DoNotOptimize(a.entries().data());
  }
}
BENCHMARK(bm_cyclon_exchange);

void bm_gdm_full(benchmark::State& state) {
  Simulation sim(ordering_config(static_cast<std::uint32_t>(state.range(0))));
  const auto nodes = sim.ordering_states();
  for (auto _ : state) benchmark::DoNotOptimize(gdm(nodes));
}
BENCHMARK(bm_gdm_full)->Arg(1000)->Arg(10000);

void bm_sdm_full(benchmark::State& state) {
  Simulation sim(ordering_config(static_cast<std::uint32_t>(state.range(0))));
  const SliceSpec spec = sim.slices();
  const auto nodes = sim.ordering_states();
  for (auto _ : state) benchmark::DoNotOptimize(sdm(nodes, spec));
}
BENCHMARK(bm_sdm_full)->Arg(1000)->Arg(10000);

void bm_z_quantile(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(z_quantile(p));
    p += 0.0001;
    if (p >= 1.0) p = 0.0001;
  }
}
BENCHMARK(bm_z_quantile);

void bm_slice_size_trial(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_slice_size({1000, 0.05, 0.5, 0.05}, 1, seed++));
  }
}
BENCHMARK(bm_slice_size_trial);

}  // namespace

BENCHMARK_MAIN();
