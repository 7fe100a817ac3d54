#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/linalg.hpp"
#include "zdlab/rational.hpp"

namespace zdlab {

// Public signal law W(tau | sigma'). Stored sparsely: for every previous
// joint state, the signals with positive probability.
class MonitoringStructure {
 public:
  struct Entry {
    std::size_t signal;
    Rational probability;
  };

  // `law` is M x |B|; every row must be a probability distribution.
  MonitoringStructure(std::vector<std::string> signals, const RationalMatrix& law);

  // B = joint states, W = delta. Signal labels are the 1-based profiles.
  static MonitoringStructure perfect(const StateSpace& space);

  std::size_t num_signals() const noexcept { return signals_.size(); }
  std::size_t num_states() const noexcept { return support_.size(); }
  const std::vector<std::string>& signals() const noexcept { return signals_; }
  std::span<const Entry> support(std::size_t state) const { return support_.at(state); }
  Rational probability(std::size_t signal, std::size_t state) const;
  RationalMatrix law() const;
  bool is_perfect() const noexcept { return perfect_; }

 private:
  MonitoringStructure() = default;

  std::vector<std::string> signals_;
  std::vector<std::vector<Entry>> support_;
  bool perfect_ = false;
};

// T^_n(sigma_n | sigma'_n, tau) for one player.
class MemoryOneStrategy {
 public:
  // table[(prev * num_signals + signal) * num_actions + action]
  MemoryOneStrategy(std::size_t player, std::size_t num_actions, std::size_t num_signals,
                    std::vector<Rational> table);

  // Repeat the previous action with probability one.
  static MemoryOneStrategy repeat(std::size_t player, std::size_t num_actions,
                                  std::size_t num_signals);

  // Perfect-monitoring strategy given directly as T_n(. | sigma') for every
  // joint state; embedded as T^_n(. | prev, tau) = rows[tau].
  static MemoryOneStrategy from_state_rows(std::size_t player, const StateSpace& space,
                                           std::span<const RationalVector> rows);

  std::size_t player() const noexcept { return player_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::size_t num_signals() const noexcept { return num_signals_; }

  const Rational& probability(std::size_t action, std::size_t prev, std::size_t signal) const {
    return table_[(prev * num_signals_ + signal) * num_actions_ + action];
  }
  std::span<const Rational> distribution(std::size_t prev, std::size_t signal) const {
    return {table_.data() + (prev * num_signals_ + signal) * num_actions_, num_actions_};
  }
  const std::vector<Rational>& table() const noexcept { return table_; }

  bool operator==(const MemoryOneStrategy& other) const = default;

 private:
  std::size_t player_;
  std::size_t num_actions_;
  std::size_t num_signals_;
  std::vector<Rational> table_;
};

// T_n(sigma_n | sigma'), stored M x M_n (row = previous state).
struct MarginalTransition {
  std::size_t player;
  RationalMatrix matrix;

  const Rational& at(std::size_t action, std::size_t prev_state) const {
    return matrix(prev_state, action);
  }
};

// Press-Dyson matrix: column a is the strategy vector T~_n(a), length M.
struct PressDysonMatrix {
  std::size_t player;
  RationalMatrix matrix;

  std::size_t num_actions() const noexcept { return matrix.cols(); }
  RationalVector strategy_vector(std::size_t action) const { return matrix.column(action); }
};

MarginalTransition marginal_transition(const MemoryOneStrategy& strategy,
                                       const MonitoringStructure& monitoring,
                                       const StateSpace& space);

PressDysonMatrix press_dyson(const MarginalTransition& marginal, const StateSpace& space);

PressDysonMatrix press_dyson(const MemoryOneStrategy& strategy,
                             const MonitoringStructure& monitoring, const StateSpace& space);

// Column-stochastic M x M matrix T(sigma | sigma'), entry (sigma, sigma').
// Columns are independent and assembled in parallel.
RationalMatrix assemble_transition(std::span<const MemoryOneStrategy> strategies,
                                   const MonitoringStructure& monitoring,
                                   const StateSpace& space);

// Single-threaded reference for assemble_transition.
RationalMatrix assemble_transition_serial(std::span<const MemoryOneStrategy> strategies,
                                          const MonitoringStructure& monitoring,
                                          const StateSpace& space);

// Throws Error(kInvalidInput) unless `strategy` fits `space` and `monitoring`.
void validate_strategy(const MemoryOneStrategy& strategy, const MonitoringStructure& monitoring,
                       const StateSpace& space);

}  // namespace zdlab
