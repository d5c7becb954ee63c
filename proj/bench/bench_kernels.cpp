// Serial reference vs OpenMP paths of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "wof/coarse_sign.hpp"
#include "wof/homodyne.hpp"
#include "wof/kernels.hpp"
#include "wof/mc_oracle.hpp"
#include "wof/numeric.hpp"
#include "wof/photocount.hpp"

namespace {

int workers_for(const benchmark::State& state) {
  return state.range(0) == 0 ? 1 : wof::kernels::max_workers();
}

void BM_PhotocountWork(benchmark::State& state) {
  const int w = workers_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(wof::photocount::average_work(50.0, 0.75, w));
}

void BM_PhotocountInformation(benchmark::State& state) {
  const int w = workers_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wof::photocount::mutual_information(200.0, 0.75, w));
  }
}

void BM_SignInformation(benchmark::State& state) {
  const int w = workers_for(state);
  const auto opt = wof::coarse_sign::optimize_sign(100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wof::coarse_sign::sign_mutual_information(100.0, opt.xi, opt.epsilon, 1e-6, w));
  }
}

void BM_HomodyneOracle(benchmark::State& state) {
  const int w = workers_for(state);
  const auto opt = wof::homodyne::optimize(100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wof::mc::estimate_work_homodyne(100.0, opt.xi, opt.epsilon, 200000, 7, w));
  }
}

}  // namespace

// Argument 0: serial reference; 1: OpenMP with all threads.
BENCHMARK(BM_PhotocountWork)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhotocountInformation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignInformation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomodyneOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
