#include <benchmark/benchmark.h>

#include "fou/fgn.hpp"
#include "fou/kernels.hpp"
#include "fou/likelihood.hpp"
#include "fou/process.hpp"

using namespace fou;

namespace {

constexpr double kHurst = 0.3;
const FouParams kParams{1.0, 2.0, 1.0, kHurst, 0.0};

std::size_t steps(const benchmark::State& state) { return static_cast<std::size_t>(state.range(0)); }

void BM_FgnSample(benchmark::State& state) {
  const FgnSampler sampler(kHurst, steps(state));
  Engine engine = make_engine(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(engine, 1.0 / 64.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FgnSample)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_Simulate(benchmark::State& state) {
  const FouSimulator sim(kParams, steps(state) / 64.0, steps(state));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate(++seed, InitMode::kStationary));
}
BENCHMARK(BM_Simulate)->Arg(1280)->Arg(12800);

void BM_Eta(benchmark::State& state) {
  const KernelContext ctx = make_kernel_context(kHurst, 1.0);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta(ctx, 1.0, s));
    s = s > 0.9 ? 0.1 : s + 1e-3;
  }
}
BENCHMARK(BM_Eta);

void BM_InnovationFilterBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(InnovationFilter(kHurst, steps(state)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InnovationFilterBuild)->Arg(1280)->Arg(5120)->Complexity(benchmark::oNSquared);

void BM_YInnovation(benchmark::State& state) {
  const KernelContext ctx = make_kernel_context(kHurst, 1.0);
  const InnovationFilter filter(kHurst, steps(state));
  const GridPath x = simulate_fou(kParams, steps(state) / 64.0, steps(state), 3, InitMode::kStationary);
  for (auto _ : state) benchmark::DoNotOptimize(compute_y_innovation(ctx, x, filter));
}
BENCHMARK(BM_YInnovation)->Arg(1280)->Arg(12800);

void BM_YMidpoint(benchmark::State& state) {
  const KernelContext ctx = make_kernel_context(kHurst, 1.0);
  const EtaTable table(kHurst, steps(state));
  const GridPath x = simulate_fou(kParams, steps(state) / 64.0, steps(state), 3, InitMode::kStationary);
  for (auto _ : state) benchmark::DoNotOptimize(compute_y(ctx, x, &table));
}
BENCHMARK(BM_YMidpoint)->Arg(1280)->Arg(5120);

void BM_BetaGrid(benchmark::State& state) {
  const KernelContext ctx = make_kernel_context(kHurst, 1.0);
  const GridPath x = simulate_fou(kParams, steps(state) / 64.0, steps(state), 3, InitMode::kStationary);
  for (auto _ : state) benchmark::DoNotOptimize(beta_transform_grid(ctx, x));
}
BENCHMARK(BM_BetaGrid)->Arg(1280)->Arg(12800);

void BM_ScoreAndInfo(benchmark::State& state) {
  const KernelContext ctx = make_kernel_context(kHurst, 1.0);
  const GridPath x = simulate_fou(kParams, steps(state) / 64.0, steps(state), 3, InitMode::kStationary);
  const GridPath y = compute_y_innovation(ctx, x, InnovationFilter(kHurst, steps(state)));
  for (auto _ : state) {
    const DriftBasis basis = drift_basis(ctx, x);
    benchmark::DoNotOptimize(mle_g(score_and_info(basis, y, kParams.mu, g_of(kParams))));
  }
}
BENCHMARK(BM_ScoreAndInfo)->Arg(1280)->Arg(12800);

}  // namespace

BENCHMARK_MAIN();
