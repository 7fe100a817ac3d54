#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"
#include "zdlab/zd.hpp"

namespace zdlab {

enum class AlphaFamilyKind {
  kGrid,         // alpha in {-g..g}^{N+1}, primitive, first nonzero positive
  kHomogeneous,  // same with alpha_0 = 0
  kEqualizer,    // e_m = target, target on a (g+1)-point grid over m's payoff range
  kExplicit,     // caller-supplied list
};

struct AlphaFamily {
  AlphaFamilyKind kind = AlphaFamilyKind::kGrid;
  int grid = 2;
  std::vector<RationalVector> alphas;  // kExplicit only
};

AlphaFamilyKind parse_alpha_family(const std::string& name);
const char* to_string(AlphaFamilyKind kind);

// Candidate relations in search order. Candidates with S alpha = 0 and
// duplicates of an earlier S alpha up to nonzero scale are dropped.
std::vector<RationalVector> enumerate_alpha_family(const AlphaFamily& family, const Game& game);

struct SearchOptions {
  int direction_grid = 0;  // extra coefficient directions from {-g..g}^{M_n}
  std::size_t max_candidates = 200'000;
  std::size_t max_lp_variables = 20'000;
};

enum class SearchStatus { kFound, kPrunedNonexistence, kInconclusive };
const char* to_string(SearchStatus status);

struct PrunedCandidate {
  RationalVector alpha;
  SignFeasibility sign;
};

struct SearchResult {
  SearchStatus status = SearchStatus::kInconclusive;
  std::size_t candidates = 0;
  std::optional<std::size_t> found_index;
  std::optional<RationalVector> alpha;
  std::optional<RationalVector> direction;
  std::optional<MemoryOneStrategy> strategy;
  std::optional<ZdCertificate> certificate;
  // Every candidate that failed the sign condition, in candidate order.
  std::vector<PrunedCandidate> pruned;
};

// Sound but incomplete: `found` carries a verified strategy; pruned-nonexistence
// means every candidate failed the necessary sign condition; otherwise
// inconclusive. Throws Error(kResourceLimit) on oversized families.
SearchResult existence_search(const Game& game, const MonitoringStructure& monitoring,
                              std::size_t player, const AlphaFamily& family,
                              const SearchOptions& options = {});

// Strategy of `player` with T_n (t * direction) = target for some t > 0, found
// by an exact LP over the signal-conditioned table; nullopt if none exists.
std::optional<MemoryOneStrategy> solve_strategy_for_target(
    const Game& game, const MonitoringStructure& monitoring, std::size_t player,
    std::span<const Rational> target, std::span<const Rational> direction);

}  // namespace zdlab
