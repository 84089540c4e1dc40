#include <benchmark/benchmark.h>

#include <channel/channel.hpp>

using namespace channel;

namespace {

const ChannelParams kP = derive_params(3.0, 4.0);

const PotentialSpec& damped_cosine() {
  static const PotentialSpec spec(XPeriodicFourier{{{1, 1.0}, {-1, 1.0}}, YProfile::gaussian(1.0, 0.7)});
  return spec;
}

void BM_Projection(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_potential(damped_cosine(), kP, nmax, 24, {0, true}));
  }
}
BENCHMARK(BM_Projection)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_FiberAssembly(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto proj = project_potential(damped_cosine(), kP, N - 1, 16);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_fiber(kP, proj, 0.17, N, 8));
}
BENCHMARK(BM_FiberAssembly)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_FiberEigenvalues(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto proj = project_potential(damped_cosine(), kP, N - 1, 16);
  const auto f = assemble_fiber(kP, proj, 0.17, N, 8);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_fiber_below(f, 3 * kP.alpha));
}
BENCHMARK(BM_FiberEigenvalues)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_HillSpectrum(benchmark::State& state) {
  const FourierCoeffs c{{1, 1.0}, {-1, 1.0}};
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hill_spectrum(c, 0.25, M, 5));
}
BENCHMARK(BM_HillSpectrum)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_ThetaSweep(benchmark::State& state) {
  BandOptions o;
  o.theta_count = 17;
  o.ceiling = 2 * kP.alpha;
  o.truncation = {24, 6, 0};
  o.auto_raise = false;
  o.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_bands(kP, damped_cosine(), o));
}
BENCHMARK(BM_ThetaSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
