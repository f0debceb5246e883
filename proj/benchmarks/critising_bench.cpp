#include <benchmark/benchmark.h>

#include "critising/dynamics.hpp"
#include "critising/graph.hpp"
#include "critising/partition.hpp"
#include "critising/spectral.hpp"

namespace {

using namespace critising;

void BM_MagnetizationLogZ(benchmark::State& state) {
  const auto inst = make_instance(complete_graph(4), state.range(0), 0.1, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(magnetization_logZ(inst).log_z.value);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(magnetization_terms(inst)));
}
BENCHMARK(BM_MagnetizationLogZ)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BruteForceLogZ(benchmark::State& state) {
  const auto inst = make_instance(cycle_graph(static_cast<int>(state.range(0)) / 2), 2, 0.3, 0.1);
  const Eigen::MatrixXd J = materialize_dense(inst);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_logZ(J).log_z.value);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_BruteForceLogZ)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MaxCutExact(benchmark::State& state) {
  const Graph g = random_regular(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(max_cut_exact(g).size);
}
BENCHMARK(BM_MaxCutExact)->Arg(12)->Arg(18)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_GlauberCompleteGraph(benchmark::State& state) {
  GlauberOptions o;
  o.steps = 1'000'000;
  o.stride = 1000;
  o.burn_in = 0;
  o.record_clouds = false;
  o.drift_check_interval = 0;
  const CurieWeiss model{state.range(0), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(glauber_run(model, o).m.back());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(o.steps));
}
BENCHMARK(BM_GlauberCompleteGraph)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_GlauberGadget(benchmark::State& state) {
  GlauberOptions o;
  o.steps = 1'000'000;
  o.stride = 1000;
  o.burn_in = 0;
  o.drift_check_interval = 0;
  const auto inst = make_instance(random_regular(16, 3, 2), state.range(0), 0.01, 0.001);
  for (auto _ : state) benchmark::DoNotOptimize(glauber_run(inst, o).m.back());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(o.steps));
}
BENCHMARK(BM_GlauberGadget)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_StructuredSpectrum(benchmark::State& state) {
  const auto inst = make_instance(random_regular(static_cast<int>(state.range(0)), 3, 3), 1 << 20,
                                  1e-6, 1e-8);
  for (auto _ : state) benchmark::DoNotOptimize(structured_spectrum(inst).diameter);
}
BENCHMARK(BM_StructuredSpectrum)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
