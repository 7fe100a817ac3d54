#include "zdlab/game.hpp"

#include <algorithm>
#include <numeric>

#include "zdlab/error.hpp"

namespace zdlab {

StateSpace::StateSpace(std::vector<std::size_t> action_counts)
    : counts_(std::move(action_counts)) {
  if (counts_.empty()) fail(ErrorKind::kInvalidInput, "a game needs at least one player");
  strides_.assign(counts_.size(), 1);
  for (std::size_t n = counts_.size(); n-- > 0;) {
    if (counts_[n] == 0) {
      fail(ErrorKind::kInvalidInput,
           "player " + std::to_string(n + 1) + " has zero actions");
    }
    strides_[n] = size_;
    if (size_ > kMaxStates / counts_[n]) {
      fail(ErrorKind::kResourceLimit, "state space exceeds " + std::to_string(kMaxStates));
    }
    size_ *= counts_[n];
  }
}

std::size_t StateSpace::index(std::span<const std::size_t> profile) const {
  if (profile.size() != counts_.size()) {
    fail(ErrorKind::kInvalidInput, "profile length does not match player count");
  }
  std::size_t idx = 0;
  for (std::size_t n = 0; n < counts_.size(); ++n) {
    if (profile[n] >= counts_[n]) fail(ErrorKind::kInvalidInput, "action out of range");
    idx += profile[n] * strides_[n];
  }
  return idx;
}

ActionProfile StateSpace::decode(std::size_t index) const {
  if (index >= size_) fail(ErrorKind::kInvalidInput, "state index out of range");
  ActionProfile profile(counts_.size());
  for (std::size_t n = 0; n < counts_.size(); ++n) profile[n] = action_of(index, n);
  return profile;
}

std::string StateSpace::label(std::size_t index) const {
  std::string out;
  for (std::size_t n = 0; n < counts_.size(); ++n) {
    if (n) out += ',';
    out += std::to_string(action_of(index, n) + 1);
  }
  return out;
}

StateSpace build_state_space(std::vector<std::size_t> action_counts) {
  return StateSpace(std::move(action_counts));
}

Game::Game(StateSpace space, std::vector<RationalVector> payoffs)
    : space_(std::move(space)), payoffs_(std::move(payoffs)) {
  if (payoffs_.size() != space_.num_players()) {
    fail(ErrorKind::kInvalidInput, "expected " + std::to_string(space_.num_players()) +
                                       " payoff vectors, got " +
                                       std::to_string(payoffs_.size()));
  }
  const std::size_t m = space_.size();
  for (std::size_t n = 0; n < payoffs_.size(); ++n) {
    if (payoffs_[n].size() != m) {
      fail(ErrorKind::kInvalidInput, "payoff vector of player " + std::to_string(n + 1) +
                                         " has " + std::to_string(payoffs_[n].size()) +
                                         " entries, expected " + std::to_string(m));
    }
  }
  payoff_matrix_ = RationalMatrix(m, payoffs_.size() + 1);
  for (std::size_t s = 0; s < m; ++s) {
    payoff_matrix_(s, 0) = 1;
    for (std::size_t n = 0; n < payoffs_.size(); ++n) payoff_matrix_(s, n + 1) = payoffs_[n][s];
  }
}

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) fail(ErrorKind::kInvalidInput, "not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) fail(ErrorKind::kInvalidInput, "permutation size mismatch");
  std::vector<std::size_t> m(size());
  for (std::size_t n = 0; n < size(); ++n) m[n] = mapping_[other.mapping_[n]];
  return Permutation(std::move(m));
}

ActionProfile Permutation::permute_profile(std::span<const std::size_t> profile) const {
  ActionProfile out(profile.size());
  for (std::size_t n = 0; n < profile.size(); ++n) out[n] = profile[mapping_[n]];
  return out;
}

bool is_symmetric_under(const Game& game, const Permutation& pi) {
  const StateSpace& space = game.space();
  const std::size_t players = space.num_players();
  if (pi.size() != players) fail(ErrorKind::kInvalidInput, "permutation size mismatch");
  for (std::size_t n = 0; n < players; ++n) {
    if (space.action_count(n) != space.action_count(pi(n))) return false;
  }
  for (std::size_t s = 0; s < space.size(); ++s) {
    const ActionProfile sigma = space.decode(s);
    const std::size_t permuted = space.index(pi.permute_profile(sigma));
    for (std::size_t n = 0; n < players; ++n) {
      if (game.payoff(pi(n))[s] != game.payoff(n)[permuted]) return false;
    }
  }
  return true;
}

WeakSymmetry is_weakly_symmetric(const Game& game, std::size_t max_players) {
  const std::size_t players = game.num_players();
  if (players > max_players) {
    fail(ErrorKind::kResourceLimit, "weak-symmetry search bound exceeded: " +
                                        std::to_string(players) + " players > " +
                                        std::to_string(max_players));
  }
  WeakSymmetry result;
  result.witnesses.assign(players, std::vector<std::optional<Permutation>>(players));
  std::vector<std::size_t> mapping(players);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  do {
    Permutation pi(mapping);
    bool needed = false;
    for (std::size_t n = 0; n < players; ++n) {
      if (!result.witnesses[n][pi(n)]) needed = true;
    }
    if (!needed || !is_symmetric_under(game, pi)) continue;
    for (std::size_t n = 0; n < players; ++n) {
      if (!result.witnesses[n][pi(n)]) result.witnesses[n][pi(n)] = pi;
    }
  } while (std::next_permutation(mapping.begin(), mapping.end()));

  result.weakly_symmetric = true;
  for (const auto& row : result.witnesses) {
    for (const auto& w : row) {
      if (!w) result.weakly_symmetric = false;
    }
  }
  return result;
}

}  // namespace zdlab
