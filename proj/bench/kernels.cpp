// Serial reference vs OpenMP kernel, same inputs, same results.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "multiband/flowsep.hpp"
#include "multiband/generator.hpp"
#include "multiband/probbound.hpp"
#include "multiband/robust01.hpp"

using namespace multiband;

namespace {

io::Instance big_instance() {
  GenOptions opt;
  opt.n = 40;
  opt.m = 64;
  opt.bands = 3;
  opt.negative_bands = 1;
  opt.seed = 3;
  return generate(opt);
}

robust01::CandidateSets sweep_sets() {
  robust01::CombinatorialInstance inst;
  std::mt19937_64 rng(5);
  const std::size_t n = 12;
  inst.cost.assign(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double d1 = 1 + static_cast<double>(rng() % 5);
    inst.thresholds.push_back({0, d1, d1 + 1 + static_cast<double>(rng() % 5)});
  }
  inst.bounds = BandBounds{{0, 0, 0}, {static_cast<int>(n), 4, 2}};
  return robust01::candidate_sets(inst);
}

void BM_CheckRobustSerial(benchmark::State& state) {
  const io::Instance inst = big_instance();
  const std::vector<double> x(inst.problem.num_vars(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(check_robust_serial(inst.problem, inst.scheme, x));
}

void BM_CheckRobustParallel(benchmark::State& state) {
  const io::Instance inst = big_instance();
  const std::vector<double> x(inst.problem.num_vars(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(check_robust_parallel(inst.problem, inst.scheme, x));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto sets = sweep_sets();
  for (auto _ : state) benchmark::DoNotOptimize(robust01::sweep_candidates_serial(sets));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto sets = sweep_sets();
  for (auto _ : state) benchmark::DoNotOptimize(robust01::sweep_candidates_parallel(sets));
}

const probbound::UniformRow kRow{{0, 0, 0, 0}, {2, 2, 2, 2}};
const std::vector<double> kX{1, 1, 1, 1};

void BM_ViolationFrequencySerial(benchmark::State& state) {
  const probbound::CounterRng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(probbound::violation_frequency_serial(kRow, kX, 6.0, state.range(0), rng, 0));
  }
}

void BM_ViolationFrequencyParallel(benchmark::State& state) {
  const probbound::CounterRng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(probbound::violation_frequency_parallel(kRow, kX, 6.0, state.range(0), rng, 0));
  }
}

}  // namespace

BENCHMARK(BM_CheckRobustSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckRobustParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ViolationFrequencySerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ViolationFrequencyParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
