#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

// Independent per-player distributions over actions.
struct ProductDistribution {
  std::vector<RationalVector> marginals;
};

using InitialCondition = std::variant<ActionProfile, ProductDistribution>;

struct EpisodeConfig {
  std::uint64_t steps = 1;
  std::uint64_t seed = 0;
  InitialCondition initial = ActionProfile{};
  std::uint64_t record_every = 1;
};

struct Sample {
  std::uint64_t t;
  std::vector<double> averages;  // sum_{t' <= t} s_n(sigma(t')) / t
};

struct Trajectory {
  std::vector<Sample> samples;  // every record_every steps, plus the last step
  ActionProfile final_state;

  const std::vector<double>& final_averages() const { return samples.back().averages; }
};

// Precomputed 53-bit inversion thresholds for one strategy profile.
class EpisodeSampler {
 public:
  EpisodeSampler(const Game& game, std::span<const MemoryOneStrategy> strategies,
                 const MonitoringStructure& monitoring);

  Trajectory run(const EpisodeConfig& config) const;

  const Game& game() const noexcept { return game_; }

 private:
  Game game_;
  std::vector<std::vector<std::uint64_t>> signal_thresholds_;  // per previous state
  // [player][prev * num_signals + signal] -> thresholds over actions
  std::vector<std::vector<std::vector<std::uint64_t>>> action_thresholds_;
  std::size_t num_signals_;
  std::vector<std::vector<double>> payoffs_;  // [state][player]
};

Trajectory run_episode(const Game& game, std::span<const MemoryOneStrategy> strategies,
                       const MonitoringStructure& monitoring, const EpisodeConfig& config);

struct BatchSummary {
  std::vector<double> mean;    // of final averages, per player
  std::vector<double> stddev;  // sample standard deviation; 0 for one run
};

struct BatchResult {
  std::vector<Trajectory> trajectories;  // in config order
  BatchSummary summary;
};

BatchResult run_batch(const Game& game, std::span<const MemoryOneStrategy> strategies,
                      const MonitoringStructure& monitoring, std::span<const EpisodeConfig> configs);

// Single-threaded reference for run_batch.
BatchResult run_batch_serial(const Game& game, std::span<const MemoryOneStrategy> strategies,
                             const MonitoringStructure& monitoring,
                             std::span<const EpisodeConfig> configs);

// Header t,avg_payoff_1,...,avg_payoff_N; values with 12 significant digits.
void write_csv(std::ostream& out, const Trajectory& trajectory, std::size_t num_players);

}  // namespace zdlab
