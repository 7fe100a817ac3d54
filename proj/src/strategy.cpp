#include "zdlab/strategy.hpp"

#include "zdlab/error.hpp"

namespace zdlab {
namespace {

void require_distribution(std::span<const Rational> row, const std::string& where) {
  Rational sum = 0;
  for (const auto& p : row) {
    if (!is_probability(p)) {
      fail(ErrorKind::kInvalidInput, where + ": probability " + to_string(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (sum != 1) fail(ErrorKind::kInvalidInput, where + ": probabilities sum to " + to_string(sum));
}

std::vector<const MemoryOneStrategy*> order_by_player(
    std::span<const MemoryOneStrategy> strategies, const MonitoringStructure& monitoring,
    const StateSpace& space) {
  std::vector<const MemoryOneStrategy*> by_player(space.num_players(), nullptr);
  for (const auto& s : strategies) {
    validate_strategy(s, monitoring, space);
    if (by_player[s.player()]) {
      fail(ErrorKind::kInvalidInput, "two strategies for player " + std::to_string(s.player() + 1));
    }
    by_player[s.player()] = &s;
  }
  for (std::size_t n = 0; n < by_player.size(); ++n) {
    if (!by_player[n]) fail(ErrorKind::kInvalidInput, "missing strategy for player " + std::to_string(n + 1));
  }
  return by_player;
}

// Column sigma' of T: sum over tau of W(tau|sigma') times the product law of
// next actions, expanded player by player (player 0 most significant).
void assemble_column(const std::vector<const MemoryOneStrategy*>& by_player,
                     const MonitoringStructure& monitoring, const StateSpace& space,
                     std::size_t prev, RationalMatrix& out) {
  const std::size_t m = space.size();
  std::vector<Rational> joint;
  std::vector<Rational> next;
  std::vector<Rational> column(m);
  for (const auto& entry : monitoring.support(prev)) {
    joint.assign(1, entry.probability);
    for (std::size_t n = 0; n < by_player.size(); ++n) {
      const auto dist = by_player[n]->distribution(space.action_of(prev, n), entry.signal);
      next.assign(joint.size() * dist.size(), Rational(0));
      for (std::size_t i = 0; i < joint.size(); ++i) {
        if (joint[i] == 0) continue;
        for (std::size_t a = 0; a < dist.size(); ++a) {
          if (dist[a] != 0) next[i * dist.size() + a] = joint[i] * dist[a];
        }
      }
      joint.swap(next);
    }
    for (std::size_t s = 0; s < m; ++s) {
      if (joint[s] != 0) column[s] += joint[s];
    }
  }
  for (std::size_t s = 0; s < m; ++s) out(s, prev) = column[s];
}

}  // namespace

MonitoringStructure::MonitoringStructure(std::vector<std::string> signals,
                                         const RationalMatrix& law)
    : signals_(std::move(signals)) {
  if (signals_.empty()) fail(ErrorKind::kInvalidInput, "monitoring needs at least one signal");
  if (law.cols() != signals_.size()) {
    fail(ErrorKind::kInvalidInput, "monitoring law has " + std::to_string(law.cols()) +
                                       " columns for " + std::to_string(signals_.size()) +
                                       " signals");
  }
  support_.resize(law.rows());
  for (std::size_t s = 0; s < law.rows(); ++s) {
    const RationalVector row = law.row(s);
    require_distribution(row, "monitoring law for state " + std::to_string(s));
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (row[b] != 0) support_[s].push_back({b, row[b]});
    }
  }
}

MonitoringStructure MonitoringStructure::perfect(const StateSpace& space) {
  MonitoringStructure mon;
  mon.perfect_ = true;
  mon.signals_.reserve(space.size());
  mon.support_.resize(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) {
    mon.signals_.push_back(space.label(s));
    mon.support_[s].push_back({s, Rational(1)});
  }
  return mon;
}

Rational MonitoringStructure::probability(std::size_t signal, std::size_t state) const {
  for (const auto& e : support_.at(state)) {
    if (e.signal == signal) return e.probability;
  }
  return 0;
}

RationalMatrix MonitoringStructure::law() const {
  RationalMatrix out(support_.size(), signals_.size());
  for (std::size_t s = 0; s < support_.size(); ++s) {
    for (const auto& e : support_[s]) out(s, e.signal) = e.probability;
  }
  return out;
}

MemoryOneStrategy::MemoryOneStrategy(std::size_t player, std::size_t num_actions,
                                     std::size_t num_signals, std::vector<Rational> table)
    : player_(player), num_actions_(num_actions), num_signals_(num_signals), table_(std::move(table)) {
  if (num_actions_ == 0 || num_signals_ == 0) {
    fail(ErrorKind::kInvalidInput, "strategy needs at least one action and one signal");
  }
  if (table_.size() != num_actions_ * num_signals_ * num_actions_) {
    fail(ErrorKind::kInvalidInput, "strategy table has " + std::to_string(table_.size()) +
                                       " entries, expected " +
                                       std::to_string(num_actions_ * num_signals_ * num_actions_));
  }
  for (std::size_t prev = 0; prev < num_actions_; ++prev) {
    for (std::size_t tau = 0; tau < num_signals_; ++tau) {
      require_distribution(distribution(prev, tau),
                           "strategy of player " + std::to_string(player_ + 1) +
                               " (prev action " + std::to_string(prev + 1) + ", signal " +
                               std::to_string(tau + 1) + ")");
    }
  }
}

MemoryOneStrategy MemoryOneStrategy::repeat(std::size_t player, std::size_t num_actions,
                                            std::size_t num_signals) {
  std::vector<Rational> table(num_actions * num_signals * num_actions);
  for (std::size_t prev = 0; prev < num_actions; ++prev) {
    for (std::size_t tau = 0; tau < num_signals; ++tau) {
      table[(prev * num_signals + tau) * num_actions + prev] = 1;
    }
  }
  return MemoryOneStrategy(player, num_actions, num_signals, std::move(table));
}

MemoryOneStrategy MemoryOneStrategy::from_state_rows(std::size_t player, const StateSpace& space,
                                                     std::span<const RationalVector> rows) {
  const std::size_t m = space.size();
  const std::size_t actions = space.action_count(player);
  if (rows.size() != m) {
    fail(ErrorKind::kInvalidInput, "expected one row per joint state (" + std::to_string(m) + ")");
  }
  std::vector<Rational> table(actions * m * actions);
  for (std::size_t prev = 0; prev < actions; ++prev) {
    for (std::size_t tau = 0; tau < m; ++tau) {
      if (rows[tau].size() != actions) {
        fail(ErrorKind::kInvalidInput, "state row " + std::to_string(tau) + " has wrong length");
      }
      for (std::size_t a = 0; a < actions; ++a) table[(prev * m + tau) * actions + a] = rows[tau][a];
    }
  }
  return MemoryOneStrategy(player, actions, m, std::move(table));
}

void validate_strategy(const MemoryOneStrategy& strategy, const MonitoringStructure& monitoring,
                       const StateSpace& space) {
  if (strategy.player() >= space.num_players()) {
    fail(ErrorKind::kInvalidInput, "strategy player " + std::to_string(strategy.player() + 1) +
                                       " not in game");
  }
  if (strategy.num_actions() != space.action_count(strategy.player())) {
    fail(ErrorKind::kInvalidInput, "strategy of player " + std::to_string(strategy.player() + 1) +
                                       " has wrong action count");
  }
  if (strategy.num_signals() != monitoring.num_signals()) {
    fail(ErrorKind::kInvalidInput, "strategy of player " + std::to_string(strategy.player() + 1) +
                                       " has wrong signal count");
  }
  if (monitoring.num_states() != space.size()) {
    fail(ErrorKind::kInvalidInput, "monitoring law does not cover the state space");
  }
}

MarginalTransition marginal_transition(const MemoryOneStrategy& strategy,
                                       const MonitoringStructure& monitoring,
                                       const StateSpace& space) {
  validate_strategy(strategy, monitoring, space);
  const std::size_t n = strategy.player();
  MarginalTransition out{n, RationalMatrix(space.size(), strategy.num_actions())};
  for (std::size_t prev = 0; prev < space.size(); ++prev) {
    const std::size_t own = space.action_of(prev, n);
    for (const auto& entry : monitoring.support(prev)) {
      const auto dist = strategy.distribution(own, entry.signal);
      for (std::size_t a = 0; a < dist.size(); ++a) {
        if (dist[a] != 0) out.matrix(prev, a) += entry.probability * dist[a];
      }
    }
  }
  return out;
}

PressDysonMatrix press_dyson(const MarginalTransition& marginal, const StateSpace& space) {
  PressDysonMatrix out{marginal.player, marginal.matrix};
  if (out.matrix.rows() != space.size()) fail(ErrorKind::kInvalidInput, "marginal size mismatch");
  for (std::size_t prev = 0; prev < space.size(); ++prev) {
    out.matrix(prev, space.action_of(prev, marginal.player)) -= 1;
  }
  return out;
}

PressDysonMatrix press_dyson(const MemoryOneStrategy& strategy,
                             const MonitoringStructure& monitoring, const StateSpace& space) {
  return press_dyson(marginal_transition(strategy, monitoring, space), space);
}

RationalMatrix assemble_transition(std::span<const MemoryOneStrategy> strategies,
                                   const MonitoringStructure& monitoring,
                                   const StateSpace& space) {
  const auto by_player = order_by_player(strategies, monitoring, space);
  const std::size_t m = space.size();
  RationalMatrix t(m, m);
#pragma omp parallel for schedule(dynamic, 4) if (m >= 64)
  for (std::size_t prev = 0; prev < m; ++prev) {
    assemble_column(by_player, monitoring, space, prev, t);
  }
  return t;
}

RationalMatrix assemble_transition_serial(std::span<const MemoryOneStrategy> strategies,
                                          const MonitoringStructure& monitoring,
                                          const StateSpace& space) {
  const auto by_player = order_by_player(strategies, monitoring, space);
  const std::size_t m = space.size();
  RationalMatrix t(m, m);
  for (std::size_t prev = 0; prev < m; ++prev) {
    assemble_column(by_player, monitoring, space, prev, t);
  }
  return t;
}

}  // namespace zdlab
