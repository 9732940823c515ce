#include "unruh_steer/qmat.hpp"
#include "unruh_steer/random_states.hpp"
#include "unruh_steer/steering.hpp"
#include "unruh_steer/sweep.hpp"
#include "unruh_steer/unruh_model.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace unruh_steer;

void BM_SicEquilibrium(benchmark::State& state) {
  const FanoState s = equilibrium_free(-1.0, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(steering_induced_coherence(s).value);
}
BENCHMARK(BM_SicEquilibrium)->Unit(benchmark::kMillisecond);

// Bob's marginal maximally mixed: nested basis search.
void BM_SicDegenerate(benchmark::State& state) {
  const FanoState s = equilibrium_free(-1.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(steering_induced_coherence(s).value);
}
BENCHMARK(BM_SicDegenerate)->Unit(benchmark::kMillisecond);

void BM_MidRandom(benchmark::State& state) {
  RandomStateGenerator gen(7);
  const FanoState s = gen.mixed_fano_state();
  for (auto _ : state) benchmark::DoNotOptimize(one_sided_mid(s).value);
}
BENCHMARK(BM_MidRandom)->Unit(benchmark::kMicrosecond);

void BM_Eigenvalues(benchmark::State& state) {
  RandomStateGenerator gen(11);
  const DensityMatrix4 rho = gen.mixed_state();
  for (auto _ : state) benchmark::DoNotOptimize(min_eigenvalue(rho));
}
BENCHMARK(BM_Eigenvalues);

void BM_Concurrence(benchmark::State& state) {
  const DensityMatrix4 rho = fano_to_matrix(equilibrium_free(-2.0, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_EvolveToHorizon(benchmark::State& state) {
  const KossakowskiFree k = kossakowski_free(UnruhParams{1.0, 2.0 * std::numbers::pi});
  RandomStateGenerator gen(3);
  const FanoState s0 = gen.mixed_fano_state();
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s0, k, UnitVector::z(), 20.0 / (4.0 * k.A)).equilibrium_deviation);
}
BENCHMARK(BM_EvolveToHorizon)->Unit(benchmark::kMillisecond);

void BM_BoundaryScan(benchmark::State& state) {
  SweepSpec spec;
  spec.quantity = Quantity::kBoundaryVerdict;
  spec.axes = {GridAxis::range("a", 0.1, 100.0, 20, Scale::kLog), GridAxis::range("z", 0.1, 10.0, 20, Scale::kLog),
               GridAxis::range("L", 0.01, 10.0, 20, Scale::kLog)};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, 1).rows.size());
}
BENCHMARK(BM_BoundaryScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
