#include "zdlab/sim.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "zdlab/error.hpp"
#include "zdlab/rng.hpp"

namespace zdlab {
namespace {

constexpr std::uint64_t kScale = std::uint64_t{1} << 53;

// Smallest integer k with k >= cdf * 2^53, so u < k  <=>  u / 2^53 < cdf.
std::uint64_t threshold(const Rational& cdf) {
  mpz_class num = cdf.get_num() * mpz_class(kScale);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), cdf.get_den().get_mpz_t());
  return q.get_ui();
}

std::vector<std::uint64_t> thresholds(std::span<const Rational> probabilities) {
  std::vector<std::uint64_t> out;
  out.reserve(probabilities.size());
  Rational cdf = 0;
  for (const auto& p : probabilities) {
    cdf += p;
    out.push_back(threshold(cdf));
  }
  if (!out.empty()) out.back() = kScale;
  return out;
}

std::size_t draw(std::span<const std::uint64_t> thr, Xoshiro256& rng) {
  const std::uint64_t u = rng.next53();
  std::size_t i = 0;
  while (u >= thr[i]) ++i;
  return i;
}

BatchSummary summarize(const std::vector<Trajectory>& runs, std::size_t players) {
  BatchSummary s;
  s.mean.assign(players, 0.0);
  s.stddev.assign(players, 0.0);
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    for (std::size_t k = 0; k < players; ++k) s.mean[k] += r.final_averages()[k];
  }
  for (auto& m : s.mean) m /= n;
  if (runs.size() > 1) {
    for (const auto& r : runs) {
      for (std::size_t k = 0; k < players; ++k) {
        const double d = r.final_averages()[k] - s.mean[k];
        s.stddev[k] += d * d;
      }
    }
    for (auto& v : s.stddev) v = std::sqrt(v / (n - 1));
  }
  return s;
}

void check_configs(std::span<const EpisodeConfig> configs) {
  if (configs.empty()) fail(ErrorKind::kInvalidInput, "batch needs at least one config");
}

}  // namespace

EpisodeSampler::EpisodeSampler(const Game& game, std::span<const MemoryOneStrategy> strategies,
                               const MonitoringStructure& monitoring)
    : game_(game), num_signals_(monitoring.num_signals()) {
  const StateSpace& space = game.space();
  if (strategies.size() != game.num_players()) {
    fail(ErrorKind::kInvalidInput, "need exactly one strategy per player");
  }
  std::vector<bool> seen(game.num_players(), false);
  for (const auto& st : strategies) {
    validate_strategy(st, monitoring, space);
    if (seen[st.player()]) fail(ErrorKind::kInvalidInput, "duplicate strategy for a player");
    seen[st.player()] = true;
  }

  signal_thresholds_.resize(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) {
    RationalVector dist(num_signals_);
    for (const auto& e : monitoring.support(s)) dist[e.signal] = e.probability;
    signal_thresholds_[s] = thresholds(dist);
  }
  action_thresholds_.resize(game.num_players());
  for (const auto& st : strategies) {
    auto& per = action_thresholds_[st.player()];
    for (std::size_t prev = 0; prev < st.num_actions(); ++prev) {
      for (std::size_t tau = 0; tau < num_signals_; ++tau) {
        per.push_back(thresholds(st.distribution(prev, tau)));
      }
    }
  }
  payoffs_.resize(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) {
    for (std::size_t n = 0; n < game.num_players(); ++n) {
      payoffs_[s].push_back(to_double(game.payoff(n)[s]));
    }
  }
}

Trajectory EpisodeSampler::run(const EpisodeConfig& config) const {
  const StateSpace& space = game_.space();
  const std::size_t players = space.num_players();
  if (config.steps < 1) fail(ErrorKind::kInvalidInput, "steps must be >= 1");
  if (config.record_every < 1) fail(ErrorKind::kInvalidInput, "record_every must be >= 1");

  Xoshiro256 rng(config.seed);
  ActionProfile profile(players);
  if (const auto* fixed = std::get_if<ActionProfile>(&config.initial)) {
    if (fixed->size() != players) fail(ErrorKind::kInvalidInput, "initial state has wrong length");
    profile = *fixed;
  } else {
    const auto& dist = std::get<ProductDistribution>(config.initial);
    if (dist.marginals.size() != players) {
      fail(ErrorKind::kInvalidInput, "initial distribution has wrong number of players");
    }
    for (std::size_t n = 0; n < players; ++n) {
      if (dist.marginals[n].size() != space.action_count(n)) {
        fail(ErrorKind::kInvalidInput, "initial distribution has wrong length");
      }
      profile[n] = draw(thresholds(dist.marginals[n]), rng);
    }
  }
  std::size_t state = space.index(profile);

  Trajectory out;
  out.samples.reserve(config.steps / config.record_every + 1);
  std::vector<double> sums(players, 0.0);
  for (std::uint64_t t = 1; t <= config.steps; ++t) {
    const std::size_t tau = draw(signal_thresholds_[state], rng);
    std::size_t next = 0;
    for (std::size_t n = 0; n < players; ++n) {
      const std::size_t own = space.action_of(state, n);
      const std::size_t a = draw(action_thresholds_[n][own * num_signals_ + tau], rng);
      next += a * space.stride(n);
    }
    state = next;
    for (std::size_t n = 0; n < players; ++n) sums[n] += payoffs_[state][n];
    if (t % config.record_every == 0 || t == config.steps) {
      Sample sample{t, std::vector<double>(players)};
      for (std::size_t n = 0; n < players; ++n) sample.averages[n] = sums[n] / static_cast<double>(t);
      out.samples.push_back(std::move(sample));
    }
  }
  out.final_state = space.decode(state);
  return out;
}

Trajectory run_episode(const Game& game, std::span<const MemoryOneStrategy> strategies,
                       const MonitoringStructure& monitoring, const EpisodeConfig& config) {
  return EpisodeSampler(game, strategies, monitoring).run(config);
}

BatchResult run_batch(const Game& game, std::span<const MemoryOneStrategy> strategies,
                      const MonitoringStructure& monitoring, std::span<const EpisodeConfig> configs) {
  check_configs(configs);
  const EpisodeSampler sampler(game, strategies, monitoring);
  BatchResult result;
  result.trajectories.resize(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      result.trajectories[i] = sampler.run(configs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.summary = summarize(result.trajectories, game.num_players());
  return result;
}

BatchResult run_batch_serial(const Game& game, std::span<const MemoryOneStrategy> strategies,
                             const MonitoringStructure& monitoring,
                             std::span<const EpisodeConfig> configs) {
  check_configs(configs);
  const EpisodeSampler sampler(game, strategies, monitoring);
  BatchResult result;
  for (const auto& c : configs) result.trajectories.push_back(sampler.run(c));
  result.summary = summarize(result.trajectories, game.num_players());
  return result;
}

void write_csv(std::ostream& out, const Trajectory& trajectory, std::size_t num_players) {
  out << "t";
  for (std::size_t n = 1; n <= num_players; ++n) out << ",avg_payoff_" << n;
  out << "\n";
  char buf[32];
  for (const auto& s : trajectory.samples) {
    out << s.t;
    for (double v : s.averages) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace zdlab
