// Serial vs OpenMP replications, the sigma kernels, and the two
// mutation paths.

#include <cstdint>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "spreadlab/core.hpp"
#include "spreadlab/harness.hpp"
#include "spreadlab/spea2.hpp"
#include "spreadlab/variation.hpp"

using namespace spreadlab;

namespace {

ExperimentConfig replication_config(std::size_t seeds) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::Spea2SteadyState;
  cfg.n = 48;
  cfg.mu = 8;
  cfg.sample_every = 0;
  cfg.stop.max_evaluations = 1000000;
  for (std::uint64_t s = 0; s < seeds; ++s) cfg.seeds.push_back(s);
  return cfg;
}

void BM_ReplicationsSerial(benchmark::State& state) {
  const auto cfg = replication_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_replications_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReplicationsSerial)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ReplicationsOpenMP(benchmark::State& state) {
  const auto cfg = replication_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_replications(cfg, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReplicationsOpenMP)->Arg(16)->Unit(benchmark::kMillisecond);

std::vector<ObjectiveValue> random_values(std::size_t count, std::int64_t n) {
  RandomSource rng(5);
  std::vector<std::int64_t> f1(count);
  for (auto& v : f1) v = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::size_t>(n) + 1));
  return omm_values(f1, n);
}

template <bool Reference>
void BM_SigmaMinimizers(benchmark::State& state) {
  const auto values = random_values(static_cast<std::size_t>(state.range(0)), 256);
  std::vector<std::size_t> alive(values.size());
  std::iota(alive.begin(), alive.end(), 0);
  for (auto _ : state) {
    if constexpr (Reference)
      benchmark::DoNotOptimize(
          sigma_minimizers_reference(values, alive, DistanceMetric::EuclideanBiObjective));
    else
      benchmark::DoNotOptimize(
          sigma_minimizers(values, alive, DistanceMetric::EuclideanBiObjective));
  }
}
BENCHMARK_TEMPLATE(BM_SigmaMinimizers, true)->Arg(9)->Arg(33)->Arg(65);
BENCHMARK_TEMPLATE(BM_SigmaMinimizers, false)->Arg(9)->Arg(33)->Arg(65);

void BM_MutationGenome(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(1);
  const auto parent = Individual::ones_prefix(n, n / 3);
  for (auto _ : state) benchmark::DoNotOptimize(mutate(parent, MutationKind::StandardBit, rng));
}
BENCHMARK(BM_MutationGenome)->Arg(64)->Arg(1024);

void BM_MutationOnesCount(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(ones_count_transition(n / 3, n, MutationKind::StandardBit, rng));
}
BENCHMARK(BM_MutationOnesCount)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
