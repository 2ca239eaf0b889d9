#include <benchmark/benchmark.h>

#include <numeric>

#include "aptrp/consecutive.h"
#include "aptrp/generators.h"
#include "aptrp/latency.h"
#include "aptrp/random.h"
#include "aptrp/reduction.h"
#include "aptrp/solvers.h"

namespace {

using namespace aptrp;

AprioriInstance Instance(int n) {
  return GenerateInstance(n, 17, MetricModel::kEuclideanUniform, {}).instance;
}

MasterTour Identity(int n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  return MasterTour(std::move(order));
}

void BM_ExactElat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = Instance(n);
  const auto tour = Identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(ExactElat(inst, tour).value);
  state.SetComplexityN(n);
}
BENCHMARK(BM_ExactElat)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_BruteForceElat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = Instance(n);
  const auto tour = Identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceElat(inst, tour).value);
}
BENCHMARK(BM_BruteForceElat)->DenseRange(6, 14, 4);

void BM_MonteCarloElat(benchmark::State& state) {
  const auto inst = Instance(50);
  const auto tour = Identity(50);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MonteCarloElat(inst, tour, 10000, 1, threads).value);
  }
}
BENCHMARK(BM_MonteCarloElat)->Arg(1)->Arg(4)->UseRealTime();

void BM_BlockElat(benchmark::State& state) {
  const int groups = static_cast<int>(state.range(0));
  const auto inst = Instance(groups + 1);
  BlockSequence blocks{{0, 1, 1.0}};
  for (int g = 1; g <= groups; ++g) blocks.push_back({g, 1 + g % 7, 0.05});
  for (auto _ : state) benchmark::DoNotOptimize(BlockElat(inst.metric(), blocks).value);
}
BENCHMARK(BM_BlockElat)->RangeMultiplier(4)->Range(16, 1024);

void BM_MakeConsecutive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = GenerateInstance(n, 17, MetricModel::kEuclideanUniform,
                                     {ProbabilityModel::Kind::kUniform, 0.5, 0.9})
                        .instance;
  const auto scaled = ScaledInstance::Build(inst, ComputeScalingParams(inst, PartitionXY(inst)));
  Rng rng(5);
  std::vector<Vertex> order(scaled.copy_count());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(rng, std::span<Vertex>(order).subspan(1));
  const MasterTour tour(order);
  for (auto _ : state) benchmark::DoNotOptimize(MakeConsecutive(scaled, tour).tour.size());
  state.counters["copies"] = scaled.copy_count();
}
BENCHMARK(BM_MakeConsecutive)->Arg(6)->Arg(10)->Arg(14);

void BM_AprioriSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = Instance(n);
  const auto solver = MakeUniformSolver(FindSolver(state.range(1) ? "local" : "nn"), 1);
  for (auto _ : state) benchmark::DoNotOptimize(AprioriSolve(inst, solver).tour.size());
}
BENCHMARK(BM_AprioriSolve)->Args({10, 0})->Args({10, 1})->Args({30, 0})->Args({30, 1});

}  // namespace

BENCHMARK_MAIN();
