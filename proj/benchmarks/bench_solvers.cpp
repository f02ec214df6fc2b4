#include <benchmark/benchmark.h>

#include "qeplas/analytic.hpp"
#include "qeplas/config.hpp"
#include "qeplas/models.hpp"
#include "qeplas/sweep.hpp"

using namespace qeplas;

namespace {

struct Fixture {
  RunConfig config = load_preset("fig2c");
  PlasmonSpectrum spectrum = spectrum_for(config);
  DriveParams drive = drive_at(config, 3351.0);
  EffectiveParams effp = effective_params(spectrum, config.emitter, drive, 10);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_EffectiveSteadyState(benchmark::State& state) {
  const auto& f = fixture();
  const ModelSystem m = build_effective(f.effp, f.spectrum, f.config.emitter, f.drive);
  for (auto _ : state) benchmark::DoNotOptimize(steady_observables(m));
}
BENCHMARK(BM_EffectiveSteadyState);

void BM_ExactSteadyState(benchmark::State& state) {
  const auto& f = fixture();
  const ModelSystem m = build_exact(f.spectrum, f.config.emitter, f.drive, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(steady_observables(m));
}
BENCHMARK(BM_ExactSteadyState)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LiouvillianAssembly(benchmark::State& state) {
  const auto& f = fixture();
  const ModelSystem m = build_exact(f.spectrum, f.config.emitter, f.drive, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian(m.hamiltonian, m.jumps));
}
BENCHMARK(BM_LiouvillianAssembly)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_AnalyticClosedForm(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(intensity_closed(f.effp, f.spectrum, f.config.emitter, f.drive));
    benchmark::DoNotOptimize(g2_closed(f.effp, f.spectrum, f.config.emitter, f.drive));
  }
}
BENCHMARK(BM_AnalyticClosedForm);

void BM_AnalyticAmplitudes(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(amplitudes(f.effp, f.spectrum, f.config.emitter, f.drive));
}
BENCHMARK(BM_AnalyticAmplitudes);

}  // namespace

BENCHMARK_MAIN();
