// Serial reference vs OpenMP route for the three parallel kernels. The second
// benchmark argument is the worker count; 1 selects the serial route.

#include <benchmark/benchmark.h>

#include "cyclordf/parallel.hpp"
#include "cyclordf/rdf_solver.hpp"
#include "cyclordf/spectrum_validator.hpp"

using namespace cyclordf;

namespace {

CtSourceModel sinusoidal_model() {
  CtSourceModel m;
  m.profile.offset = 5.0;
  m.profile.harmonics = {{1, 1.0 / 3.0, 0.0}};
  m.kernel = {KernelKind::Parzen, 0.5};
  return m;
}

const EpsilonSpec kGolden = EpsilonSpec::irrational(0.6180339887498949, "golden");

void BM_CovarianceBuild(benchmark::State& state) {
  const SamplingSpec s{3, kGolden, 0.1, static_cast<int>(state.range(0))};
  const auto m = sinusoidal_model();
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_covariance(m, s, jobs));
}
BENCHMARK(BM_CovarianceBuild)->ArgsProduct({{256, 1024}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_PhaseSweep(benchmark::State& state) {
  const auto m = sinusoidal_model();
  std::vector<int> grid{32, 64, 96, 128};
  SweepOptions opts{3, 1e-4, static_cast<int>(state.range(1))};
  const int phases = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(rdf_phase_sweep(m, 3, kGolden, 1.0, grid, phases, opts));
}
BENCHMARK(BM_PhaseSweep)->ArgsProduct({{16}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

void BM_GaussianSampling(benchmark::State& state) {
  const auto c = build_covariance(sinusoidal_model(), SamplingSpec{3, kGolden, 0.1, 64});
  const McConfig mc{state.range(0), 1, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(sample_gaussian(c, mc));
}
BENCHMARK(BM_GaussianSampling)->ArgsProduct({{50000}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
