// Wall-time comparison of the serial reference replication loop against the
// OpenMP one on an identical workload.  The two paths produce byte-identical
// traces (asserted in the unit tests); this target only measures the speedup.
#include <benchmark/benchmark.h>

#include "sticky/runner.hpp"
#include "sticky/targets.hpp"

namespace {

constexpr int kRuns = 32;
constexpr long kIters = 2000;

void replications(benchmark::State& state, bool parallel) {
  const sticky::TargetModel target = sticky::make_gmix61();
  const sticky::KernelSpec kernel = sticky::KernelSpec::parse("asm");
  const sticky::UpdateRule rule;
  const sticky::S0Spec s0 = sticky::S0Spec::fixed(target.s0);
  for (auto _ : state) {
    sticky::ManyResult res =
        parallel
            ? sticky::run_many(target, kernel, sticky::Construction::C4, rule, s0, target.x0,
                               kIters, 42, kRuns, 0)
            : sticky::run_many_serial(target, kernel, sticky::Construction::C4, rule, s0,
                                      target.x0, kIters, 42, kRuns);
    benchmark::DoNotOptimize(res.traces.data());
  }
  state.SetItemsProcessed(state.iterations() * kRuns * kIters);
}

}  // namespace

BENCHMARK_CAPTURE(replications, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replications, openmp, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
