#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/random_instances.hpp"
#include "zdlab/constructors.hpp"
#include "zdlab/error.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/rng.hpp"
#include "zdlab/sim.hpp"

using namespace zdlab;

namespace {

struct Setup {
  Game game;
  MonitoringStructure monitoring;
  std::vector<MemoryOneStrategy> strategies;
};

Setup equalizer_setup() {
  Game g = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  auto c = make_equalizer_imperfect(g, Rational(1, 5), {Rational(-3, 125), Rational(33, 500)});
  std::vector<MemoryOneStrategy> s{c.strategy, MemoryOneStrategy(1, 2, 2, {1, 0, 1, 0, 1, 0, 1, 0})};
  return {std::move(g), std::move(c.monitoring), std::move(s)};
}

}  // namespace

TEST_SUITE("sim") {
TEST_CASE("generator reference values") {
  // splitmix64 stream from seed 0 seeds the state; first outputs are fixed.
  Xoshiro256 a(0), b(0), c(1);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  for (int i = 0; i < 1000; ++i) CHECK(a.next53() < (std::uint64_t{1} << 53));
}

TEST_CASE("equalizer average approaches the target") {
  const auto s = equalizer_setup();
  EpisodeConfig cfg;
  cfg.steps = 200000;
  cfg.seed = 7;
  cfg.initial = ActionProfile{0, 0};
  cfg.record_every = 50000;
  const auto t = run_episode(s.game, s.strategies, s.monitoring, cfg);
  CHECK(t.samples.size() == 4);
  CHECK(t.samples.back().t == 200000);
  CHECK(std::abs(t.final_averages()[1] - 2.75) < 0.1);
}

TEST_CASE("determinism and parallel batch matches serial") {
  const auto s = equalizer_setup();
  std::vector<EpisodeConfig> cfgs;
  for (std::uint64_t seed : {1, 2, 3}) cfgs.push_back({5000, seed, ActionProfile{0, 0}, 1000});
  const auto a = run_batch(s.game, s.strategies, s.monitoring, cfgs);
  const auto b = run_batch_serial(s.game, s.strategies, s.monitoring, cfgs);
  REQUIRE(a.trajectories.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    std::ostringstream x, y;
    write_csv(x, a.trajectories[i], 2);
    write_csv(y, b.trajectories[i], 2);
    CHECK(x.str() == y.str());
    CHECK(a.trajectories[i].final_state == b.trajectories[i].final_state);
  }
  CHECK(a.summary.mean == b.summary.mean);
  CHECK(a.summary.stddev == b.summary.stddev);
}

TEST_CASE("singleton batch summary") {
  const auto s = equalizer_setup();
  const std::vector<EpisodeConfig> cfgs{{1000, 9, ActionProfile{1, 1}, 100}};
  const auto r = run_batch(s.game, s.strategies, s.monitoring, cfgs);
  CHECK(r.summary.mean == r.trajectories[0].final_averages());
  CHECK(r.summary.stddev == std::vector<double>{0.0, 0.0});
}

TEST_CASE("zero payoffs give zero averages") {
  const Game g(StateSpace({2, 3}), {RationalVector(6), RationalVector(6)});
  const auto m = MonitoringStructure::perfect(g.space());
  zdtest::Random rng(3);
  const std::vector<MemoryOneStrategy> s{zdtest::random_strategy(rng, 0, g.space(), m, false),
                                         zdtest::random_strategy(rng, 1, g.space(), m, false)};
  const auto t = run_episode(g, s, m, {1000, 1, ActionProfile{0, 0}, 10});
  for (const auto& sample : t.samples)
    for (double v : sample.averages) CHECK(v == 0.0);
  std::ostringstream out;
  write_csv(out, t, 2);
  CHECK(out.str().rfind("t,avg_payoff_1,avg_payoff_2\n10,0,0\n", 0) == 0);
}

TEST_CASE("running averages stay within payoff bounds") {
  zdtest::Random rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto space = zdtest::random_space(rng, 2, 3, 2, 3);
    std::vector<RationalVector> pay;
    for (std::size_t n = 0; n < space.num_players(); ++n) pay.push_back(zdtest::random_payoff(rng, space.size()));
    const Game g(space, pay);
    const auto m = zdtest::random_monitoring(rng, space, false);
    std::vector<MemoryOneStrategy> s;
    for (std::size_t n = 0; n < space.num_players(); ++n) s.push_back(zdtest::random_strategy(rng, n, space, m, false));
    std::vector<RationalVector> marginals;
    for (std::size_t n = 0; n < space.num_players(); ++n) marginals.push_back(rng.distribution(space.action_count(n), false));
    const auto t = run_episode(g, s, m, {2000, 11, ProductDistribution{marginals}, 7});
    CHECK(t.samples.back().t == 2000);
    for (const auto& sample : t.samples) {
      for (std::size_t n = 0; n < space.num_players(); ++n) {
        const auto [lo, hi] = std::minmax_element(pay[n].begin(), pay[n].end());
        CHECK(sample.averages[n] >= to_double(*lo) - 1e-12);
        CHECK(sample.averages[n] <= to_double(*hi) + 1e-12);
      }
    }
  }
}

TEST_CASE("deterministic strategies follow their rule exactly") {
  // Both players alternate; from 11 the path is 22, 11, 22, 11.
  const Game g(StateSpace({2, 2}), {{1, 0, 0, 3}, {2, 0, 0, 4}});
  const auto m = MonitoringStructure::perfect(g.space());
  const std::vector<RationalVector> rows{{0, 1}, {0, 1}, {1, 0}, {1, 0}};
  const std::vector<MemoryOneStrategy> s{MemoryOneStrategy::from_state_rows(0, g.space(), rows),
                                         MemoryOneStrategy::from_state_rows(1, g.space(), rows)};
  const auto t = run_episode(g, s, m, {4, 0, ActionProfile{0, 0}, 1});
  CHECK(t.samples[1].averages[0] == doctest::Approx(2.0));
  CHECK(t.samples[3].averages[1] == doctest::Approx(3.0));
  CHECK(t.final_state == ActionProfile{0, 0});
}

TEST_CASE("invalid inputs") {
  const auto s = equalizer_setup();
  CHECK_THROWS_AS(run_episode(s.game, s.strategies, s.monitoring, {0, 1, ActionProfile{0, 0}, 1}), Error);
  CHECK_THROWS_AS(run_episode(s.game, s.strategies, s.monitoring, {10, 1, ActionProfile{0, 2}, 1}), Error);
  CHECK_THROWS_AS(run_episode(s.game, s.strategies, s.monitoring, {10, 1, ActionProfile{0, 0}, 0}), Error);
  const std::vector<EpisodeConfig> none;
  CHECK_THROWS_AS(run_batch(s.game, s.strategies, s.monitoring, none), Error);
}

TEST_CASE("batch means agree with the exact stationary payoffs" * doctest::description("stochastic")) {
  zdtest::Random rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const StateSpace space({2, 2});
    std::vector<RationalVector> pay{zdtest::random_payoff(rng, 4), zdtest::random_payoff(rng, 4)};
    const Game g(space, pay);
    const auto m = zdtest::random_monitoring(rng, space, true);
    const std::vector<MemoryOneStrategy> s{zdtest::random_strategy(rng, 0, space, m, true),
                                           zdtest::random_strategy(rng, 1, space, m, true)};
    const auto st = stationary_distribution(assemble_transition(s, m, space), point_mass(4, 0));
    REQUIRE(st.rho_exact.has_value());
    const auto e = expected_payoffs(*st.rho_exact, g);
    std::vector<EpisodeConfig> cfgs;
    for (std::uint64_t seed = 0; seed < 20; ++seed) cfgs.push_back({20000, 1000 + seed, ActionProfile{0, 0}, 20000});
    const auto r = run_batch(g, s, m, cfgs);
    for (std::size_t n = 0; n < 2; ++n) {
      const double stderr_ = r.summary.stddev[n] / std::sqrt(20.0);
      CHECK(std::abs(r.summary.mean[n] - to_double(e[n + 1])) <= 5 * stderr_ + 1e-12);
    }
  }
}
}
