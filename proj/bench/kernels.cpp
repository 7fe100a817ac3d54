// Serial reference vs OpenMP kernel timings.
#include <benchmark/benchmark.h>

#include "support/random_instances.hpp"
#include "zdlab/constructors.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/sim.hpp"

using namespace zdlab;

namespace {

struct Profile {
  StateSpace space;
  MonitoringStructure monitoring;
  std::vector<MemoryOneStrategy> strategies;
};

Profile random_profile(std::size_t players, std::size_t actions) {
  zdtest::Random rng(1);
  StateSpace space(std::vector<std::size_t>(players, actions));
  auto m = zdtest::random_monitoring(rng, space, true);
  std::vector<MemoryOneStrategy> s;
  for (std::size_t n = 0; n < players; ++n) s.push_back(zdtest::random_strategy(rng, n, space, m, true));
  return {std::move(space), std::move(m), std::move(s)};
}

void BM_AssembleSerial(benchmark::State& state) {
  const auto p = random_profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_transition_serial(p.strategies, p.monitoring, p.space));
}

void BM_AssembleParallel(benchmark::State& state) {
  const auto p = random_profile(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_transition(p.strategies, p.monitoring, p.space));
}

SparseRows sparse_chain(std::size_t players, std::size_t actions) {
  const auto p = random_profile(players, actions);
  return to_sparse_rows(assemble_transition(p.strategies, p.monitoring, p.space));
}

void BM_LazyStepSerial(benchmark::State& state) {
  const auto t = sparse_chain(state.range(0), state.range(1));
  std::vector<double> x(t.size(), 1.0 / t.size()), y(t.size());
  for (auto _ : state) benchmark::DoNotOptimize(lazy_step_serial(t, x, y));
}

void BM_LazyStepParallel(benchmark::State& state) {
  const auto t = sparse_chain(state.range(0), state.range(1));
  std::vector<double> x(t.size(), 1.0 / t.size()), y(t.size());
  for (auto _ : state) benchmark::DoNotOptimize(lazy_step(t, x, y));
}

struct EqualizerBatch {
  Game game = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  Construction c = make_equalizer_imperfect(game, Rational(1, 5), {Rational(-3, 125), Rational(33, 500)});
  std::vector<MemoryOneStrategy> profile{c.strategy, MemoryOneStrategy(1, 2, 2, {1, 0, 1, 0, 1, 0, 1, 0})};
  std::vector<EpisodeConfig> configs;

  explicit EqualizerBatch(std::size_t runs) {
    for (std::size_t i = 0; i < runs; ++i) configs.push_back({100'000, i, ActionProfile{0, 0}, 100'000});
  }
};

void BM_BatchSerial(benchmark::State& state) {
  const EqualizerBatch b(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(b.game, b.profile, b.c.monitoring, b.configs));
}

void BM_BatchParallel(benchmark::State& state) {
  const EqualizerBatch b(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(b.game, b.profile, b.c.monitoring, b.configs));
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Args({2, 4})->Args({3, 4})->Args({4, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Args({2, 4})->Args({3, 4})->Args({4, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LazyStepSerial)->Args({4, 3})->Args({5, 3})->Args({6, 3});
BENCHMARK(BM_LazyStepParallel)->Args({4, 3})->Args({5, 3})->Args({6, 3});
BENCHMARK(BM_BatchSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
