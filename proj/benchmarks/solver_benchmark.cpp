#include <random>

#include <benchmark/benchmark.h>

#include "fhmdp/fhmdp.hpp"

namespace {

void BM_SolveDrilling(benchmark::State& state) {
  const auto mdp = fhmdp::drilling_model();
  const fhmdp::Horizon horizon{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    auto result = fhmdp::solve_backward_induction(mdp, horizon);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SolveDrilling)->Arg(10)->Arg(100)->Arg(1000);

void BM_SolveRandom(benchmark::State& state) {
  std::mt19937_64 engine(1);
  fhmdp::RandomModelOptions options;
  options.max_states = static_cast<std::size_t>(state.range(0));
  options.max_actions = 5;
  // random_model draws sizes up to the maximum; retry until we get it.
  auto mdp = fhmdp::random_model(engine, options);
  while (mdp.state_count() != options.max_states) mdp = fhmdp::random_model(engine, options);
  for (auto _ : state) {
    auto result = fhmdp::solve_backward_induction(mdp, fhmdp::Horizon{20});
    benchmark::DoNotOptimize(result);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveRandom)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_EvaluatePolicy(benchmark::State& state) {
  const auto mdp = fhmdp::drilling_model();
  const auto policy = fhmdp::solve_backward_induction(mdp, fhmdp::Horizon{10}).policy;
  for (auto _ : state) {
    auto values = fhmdp::evaluate_policy(mdp, policy, fhmdp::Horizon{10});
    benchmark::DoNotOptimize(values);
  }
}
BENCHMARK(BM_EvaluatePolicy);

void BM_SimulateDrilling(benchmark::State& state) {
  const auto mdp = fhmdp::drilling_model();
  const auto policy = fhmdp::solve_backward_induction(mdp, fhmdp::Horizon{10}).policy;
  const auto episodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto estimate = fhmdp::simulate_policy(mdp, policy, fhmdp::StateId{0}, episodes, 7);
    benchmark::DoNotOptimize(estimate);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(episodes));
}
BENCHMARK(BM_SimulateDrilling)->Arg(1000)->Arg(10000);

void BM_EnumerateToy(benchmark::State& state) {
  const auto mdp = fhmdp::toy3_model();
  const fhmdp::Horizon horizon{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    auto result = fhmdp::enumerate_optimal(mdp, horizon);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_EnumerateToy)->Arg(1)->Arg(2)->Arg(3);

void BM_LoadDrillingModel(benchmark::State& state) {
  for (auto _ : state) {
    auto mdp = fhmdp::load_model(fhmdp::drilling_model_text());
    benchmark::DoNotOptimize(mdp);
  }
}
BENCHMARK(BM_LoadDrillingModel);

}  // namespace

BENCHMARK_MAIN();
