#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zdlab/linalg.hpp"
#include "zdlab/rational.hpp"

namespace zdlab {

// One action per player, 0-based.
using ActionProfile = std::vector<std::size_t>;

// Joint action space with lexicographic flat indexing, player 0 most
// significant. For a 2x2 game the order is (0,0),(0,1),(1,0),(1,1).
class StateSpace {
 public:
  static constexpr std::size_t kMaxStates = 10'000'000;

  explicit StateSpace(std::vector<std::size_t> action_counts);

  std::size_t num_players() const noexcept { return counts_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::size_t action_count(std::size_t player) const { return counts_.at(player); }
  const std::vector<std::size_t>& action_counts() const noexcept { return counts_; }

  std::size_t index(std::span<const std::size_t> profile) const;
  ActionProfile decode(std::size_t index) const;
  std::size_t action_of(std::size_t index, std::size_t player) const {
    return (index / strides_[player]) % counts_[player];
  }
  std::size_t stride(std::size_t player) const { return strides_.at(player); }

  // 1-based comma-separated profile, e.g. "1,2".
  std::string label(std::size_t index) const;

  bool operator==(const StateSpace& other) const { return counts_ == other.counts_; }

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

StateSpace build_state_space(std::vector<std::size_t> action_counts);

class Game {
 public:
  Game(StateSpace space, std::vector<RationalVector> payoffs);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t num_players() const noexcept { return space_.num_players(); }
  std::size_t num_states() const noexcept { return space_.size(); }
  const RationalVector& payoff(std::size_t player) const { return payoffs_.at(player); }
  const std::vector<RationalVector>& payoffs() const noexcept { return payoffs_; }

  // M x (N+1) matrix (1, s_1, ..., s_N).
  const RationalMatrix& payoff_matrix() const noexcept { return payoff_matrix_; }

 private:
  StateSpace space_;
  std::vector<RationalVector> payoffs_;
  RationalMatrix payoff_matrix_;
};

// Bijection on players, 0-based.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator()(std::size_t n) const { return mapping_.at(n); }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

  // (this . other)(n) = this(other(n)).
  Permutation compose(const Permutation& other) const;

  // sigma_pi = (sigma_{pi(0)}, ..., sigma_{pi(N-1)}).
  ActionProfile permute_profile(std::span<const std::size_t> profile) const;

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<std::size_t> mapping_;
};

bool is_symmetric_under(const Game& game, const Permutation& pi);

struct WeakSymmetry {
  bool weakly_symmetric = false;
  // witnesses[n][m] maps n to m when such a symmetry exists.
  std::vector<std::vector<std::optional<Permutation>>> witnesses;
};

// Exhaustive search over all N! permutations. N above `max_players` raises
// Error(kResourceLimit) rather than answering false.
WeakSymmetry is_weakly_symmetric(const Game& game, std::size_t max_players = 6);

}  // namespace zdlab
