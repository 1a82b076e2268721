#include <benchmark/benchmark.h>

#include "orpar/families.hpp"
#include "orpar/parallelism.hpp"

using namespace orpar;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

const GlCandidate& glued() {
  static const GlCandidate star = glued_star(Ruler::standard(), 0.3, -0.4);
  return star;
}

void BM_Incidence(benchmark::State& state) {
  const SamplerSpec spec{600, 300, 100, 1};
  for (auto _ : state) benchmark::DoNotOptimize(verify_incidence(glued(), spec, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_IncidenceCones(benchmark::State& state) {
  static const GlCandidate star = combine_case1(Ruler::standard());
  const SamplerSpec spec{6000, 3000, 1000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(verify_incidence(star, spec, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * 10000);
}

void BM_Continuity(benchmark::State& state) {
  ContinuitySpec spec;
  spec.n_pairs = 20;
  for (auto _ : state) benchmark::DoNotOptimize(verify_continuity(glued(), spec, policy_of(state)));
}

void BM_Partition(benchmark::State& state) {
  const OrientedParallelism par = build_parallelism(glued(), false);
  for (auto _ : state) benchmark::DoNotOptimize(verify_partition(par, 50, 1, policy_of(state)));
}

}  // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_Incidence)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IncidenceCones)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Continuity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Partition)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
