#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/linalg.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

// alpha = (alpha_0, alpha_1, ..., alpha_N) encodes sum_n alpha_n e_n = -alpha_0.
struct LinearRelation {
  RationalVector alpha;

  std::size_t num_players() const noexcept { return alpha.empty() ? 0 : alpha.size() - 1; }
  bool operator==(const LinearRelation& other) const = default;
};

// Human-readable form scaled so the first payoff coefficient is 1,
// e.g. "e1 - e2 = 0" or "e2 = 11/4".
std::string describe(const LinearRelation& relation);

// Relations enforced by one player's strategy. The relations are canonical:
// reduced modulo ker S (trailing pivots), then in reduced echelon form with
// pivot priority alpha_1, ..., alpha_N, alpha_0 and leading coefficient 1.
struct ZdCertificate {
  std::size_t player = 0;
  std::size_t dimension = 0;
  std::vector<LinearRelation> relations;
  std::vector<RationalVector> basis;      // u_k = S alpha_k
  std::vector<RationalVector> witnesses;  // c_k with T_n c_k = u_k
  // Basis of ker S: relations every stationary payoff vector satisfies.
  // Nonempty exactly when relations are only determined modulo ker S.
  std::vector<LinearRelation> structural;

  bool nonunique() const noexcept { return !structural.empty(); }
};

// Canonical echelon basis of the span of `alphas` modulo ker S.
std::vector<LinearRelation> canonical_relations(std::span<const RationalVector> alphas,
                                                const Game& game);

// ker S in canonical form.
std::vector<LinearRelation> structural_relations(const Game& game);

// Builds a canonical certificate from pairs (alpha_k, c_k) that satisfy
// T_n c_k = S alpha_k. Throws Error(kInvalidInput) if a pair does not.
ZdCertificate certificate_from_pairs(const PressDysonMatrix& pd, const Game& game,
                                     std::span<const std::pair<RationalVector, RationalVector>> pairs);

// V_n = span T_n intersected with span S. nullopt when dim V_n = 0.
std::optional<ZdCertificate> detect_zd(const PressDysonMatrix& pd, const Game& game);

struct ConsistencySystem {
  RationalMatrix a;  // (N+1) x K, columns alpha_k; row 0 is b^T, rows 1.. are A-bar
  std::size_t rank_a = 0;
  std::size_t rank_a_bar = 0;
  bool consistent = false;
  // E = particular + span(directions), over (e_1, ..., e_N).
  std::optional<RationalVector> particular;
  std::vector<RationalVector> directions;
};

ConsistencySystem consistency_check(std::span<const LinearRelation> relations,
                                    std::size_t num_players);

// All relations of `certs` plus their structural relations, deduplicated.
std::vector<LinearRelation> collect_relations(std::span<const ZdCertificate> certs);

struct IndependenceResult {
  bool independent = true;
  // Dependent case: w_n in V_n, not all zero, with sum_n w_n = 0.
  std::vector<std::size_t> players;
  std::vector<RationalVector> coefficients;  // over each certificate's basis
  std::vector<RationalVector> vectors;       // w_n
};

// Independent iff the V_n form a direct sum, i.e. dim(sum V_n) = sum dim V_n.
IndependenceResult independence_check(std::span<const ZdCertificate> certs);

bool check_nonzero_pd(const PressDysonMatrix& pd);

struct SignViolation {
  std::size_t state;
  Rational value;
  bool required_nonpositive;  // false: required nonnegative
};

struct SignPairCheck {
  std::size_t max_action;  // rows where target must be <= 0
  std::size_t min_action;  // rows where target must be >= 0
  std::vector<SignViolation> violations;
};

struct SignFeasibility {
  bool feasible = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (max_action, min_action)
  std::vector<SignPairCheck> failed_pairs;  // every pair, when infeasible
};

// Necessary condition for target in span T_n for some strategy of `player`.
SignFeasibility sign_feasibility(std::span<const Rational> target, std::size_t player,
                                 const StateSpace& space);

struct DimensionCheck {
  bool violation = false;
  bool nonzero_pd = false;        // hypothesis of the nonzero-entry impossibility result
  bool distinct_payoffs = false;  // hypothesis of the distinct-payoff impossibility result
  std::size_t dimension = 0;
  std::size_t num_players = 0;
};

// In a weakly symmetric game, a strategy meeting either hypothesis must have
// dim V_n < N. Throws Error(kPrecondition) if the game is not weakly symmetric.
DimensionCheck check_dimension_n_impossibility(const Game& game, const PressDysonMatrix& pd);

}  // namespace zdlab
