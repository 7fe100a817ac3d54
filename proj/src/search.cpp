#include "zdlab/search.hpp"

#include <algorithm>
#include <numeric>

#include "zdlab/error.hpp"
#include "zdlab/lp.hpp"

namespace zdlab {
namespace {

// Odometer over {-g..g}^len.
bool next_tuple(std::vector<int>& v, int g) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < g) {
      ++v[i];
      return true;
    }
    v[i] = -g;
  }
  return false;
}

bool primitive_and_positive(const std::vector<int>& v) {
  int g = 0;
  int first = 0;
  for (int x : v) {
    g = std::gcd(g, x < 0 ? -x : x);
    if (first == 0) first = x;
  }
  return g == 1 && first > 0;
}

// Scale v so its first nonzero entry is +1 (projective class up to sign),
// keeping track of sign so v and -v stay distinct.
RationalVector projective_normal_form(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) {
      const Rational scale = 1 / x;
      RationalVector out(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
      return out;
    }
  }
  return v;
}

std::vector<RationalVector> directions_for(std::size_t actions, int grid) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < actions; ++i) {
    for (std::size_t j = 0; j < actions; ++j) {
      if (i == j) continue;
      RationalVector d(actions);
      d[i] = 1;
      d[j] = -1;
      out.push_back(std::move(d));
    }
  }
  if (grid > 0 && actions > 0) {
    std::vector<int> v(actions, -grid);
    do {
      if (std::all_of(v.begin(), v.end(), [&](int x) { return x == v.front(); })) continue;
      int g = 0;
      for (int x : v) g = std::gcd(g, x < 0 ? -x : x);
      if (g != 1) continue;
      RationalVector d(actions);
      for (std::size_t i = 0; i < actions; ++i) d[i] = v[i];
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    } while (next_tuple(v, grid));
  }
  return out;
}

struct CandidateOutcome {
  bool sign_ok = false;
  SignFeasibility sign;
  std::optional<MemoryOneStrategy> strategy;
  std::optional<RationalVector> direction;
};

}  // namespace

AlphaFamilyKind parse_alpha_family(const std::string& name) {
  if (name == "grid") return AlphaFamilyKind::kGrid;
  if (name == "homogeneous") return AlphaFamilyKind::kHomogeneous;
  if (name == "equalizer") return AlphaFamilyKind::kEqualizer;
  if (name == "explicit") return AlphaFamilyKind::kExplicit;
  fail(ErrorKind::kInvalidInput, "unknown relation family '" + name + "'");
}

const char* to_string(AlphaFamilyKind kind) {
  switch (kind) {
    case AlphaFamilyKind::kGrid: return "grid";
    case AlphaFamilyKind::kHomogeneous: return "homogeneous";
    case AlphaFamilyKind::kEqualizer: return "equalizer";
    case AlphaFamilyKind::kExplicit: return "explicit";
  }
  return "?";
}

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kPrunedNonexistence: return "pruned-nonexistence";
    case SearchStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<RationalVector> enumerate_alpha_family(const AlphaFamily& family, const Game& game) {
  const std::size_t width = game.num_players() + 1;
  std::vector<RationalVector> raw;
  switch (family.kind) {
    case AlphaFamilyKind::kGrid:
    case AlphaFamilyKind::kHomogeneous: {
      if (family.grid < 1) fail(ErrorKind::kInvalidInput, "grid must be >= 1");
      const bool homogeneous = family.kind == AlphaFamilyKind::kHomogeneous;
      const std::size_t free = homogeneous ? width - 1 : width;
      std::vector<int> v(free, -family.grid);
      do {
        if (!primitive_and_positive(v)) continue;
        RationalVector alpha(width);
        for (std::size_t i = 0; i < free; ++i) alpha[homogeneous ? i + 1 : i] = v[i];
        raw.push_back(std::move(alpha));
      } while (next_tuple(v, family.grid));
      break;
    }
    case AlphaFamilyKind::kEqualizer: {
      if (family.grid < 1) fail(ErrorKind::kInvalidInput, "grid must be >= 1");
      for (std::size_t m = 0; m < game.num_players(); ++m) {
        const auto& s = game.payoff(m);
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        for (int i = 0; i <= family.grid; ++i) {
          RationalVector alpha(width);
          alpha[m + 1] = 1;
          Rational step(i, family.grid);
          step.canonicalize();
          alpha[0] = -(*lo + (*hi - *lo) * step);
          raw.push_back(std::move(alpha));
        }
      }
      break;
    }
    case AlphaFamilyKind::kExplicit:
      for (const auto& a : family.alphas) {
        if (a.size() != width) fail(ErrorKind::kInvalidInput, "explicit relation has wrong length");
        raw.push_back(a);
      }
      break;
  }

  const RationalMatrix& s = game.payoff_matrix();
  std::vector<RationalVector> out;
  std::vector<RationalVector> seen_targets;
  for (auto& alpha : raw) {
    const RationalVector target = s * alpha;
    if (is_zero(target)) continue;
    RationalVector key = projective_normal_form(target);
    if (std::find(seen_targets.begin(), seen_targets.end(), key) != seen_targets.end()) continue;
    seen_targets.push_back(std::move(key));
    out.push_back(std::move(alpha));
  }
  return out;
}

std::optional<MemoryOneStrategy> solve_strategy_for_target(
    const Game& game, const MonitoringStructure& monitoring, std::size_t player,
    std::span<const Rational> target, std::span<const Rational> direction) {
  const StateSpace& space = game.space();
  const std::size_t actions = space.action_count(player);
  const std::size_t signals = monitoring.num_signals();
  const std::size_t m = space.size();
  if (target.size() != m || direction.size() != actions) {
    fail(ErrorKind::kInvalidInput, "target or direction has wrong length");
  }
  // Variables Y(prev, tau, a) = t * T^(a | prev, tau) and t, all >= 0.
  const std::size_t table = actions * signals * actions;
  const std::size_t t_col = table;
  auto var = [&](std::size_t prev, std::size_t tau, std::size_t a) {
    return (prev * signals + tau) * actions + a;
  };
  RationalMatrix a(m + actions * signals, table + 1);
  RationalVector b(a.rows());
  for (std::size_t s = 0; s < m; ++s) {
    const std::size_t own = space.action_of(s, player);
    for (const auto& entry : monitoring.support(s)) {
      for (std::size_t act = 0; act < actions; ++act) {
        if (direction[act] != 0) a(s, var(own, entry.signal, act)) += direction[act] * entry.probability;
      }
    }
    a(s, t_col) = -direction[own];
    b[s] = target[s];
  }
  for (std::size_t prev = 0; prev < actions; ++prev) {
    for (std::size_t tau = 0; tau < signals; ++tau) {
      const std::size_t row = m + prev * signals + tau;
      for (std::size_t act = 0; act < actions; ++act) a(row, var(prev, tau, act)) = 1;
      a(row, t_col) = -1;
    }
  }
  const auto x = find_nonnegative_solution(a, b);
  if (!x || (*x)[t_col] == 0) return std::nullopt;
  const Rational t = (*x)[t_col];
  std::vector<Rational> probs(table);
  for (std::size_t i = 0; i < table; ++i) probs[i] = (*x)[i] / t;
  return MemoryOneStrategy(player, actions, signals, std::move(probs));
}

SearchResult existence_search(const Game& game, const MonitoringStructure& monitoring,
                              std::size_t player, const AlphaFamily& family,
                              const SearchOptions& options) {
  const StateSpace& space = game.space();
  if (player >= game.num_players()) fail(ErrorKind::kInvalidInput, "player out of range");
  if (monitoring.num_states() != space.size()) {
    fail(ErrorKind::kInvalidInput, "monitoring law does not cover the state space");
  }
  const std::size_t actions = space.action_count(player);
  const std::size_t lp_vars = actions * actions * monitoring.num_signals() + 1;
  if (lp_vars > options.max_lp_variables) {
    fail(ErrorKind::kResourceLimit, "strategy LP would have " + std::to_string(lp_vars) + " variables");
  }

  const auto candidates = enumerate_alpha_family(family, game);
  if (candidates.size() > options.max_candidates) {
    fail(ErrorKind::kResourceLimit, std::to_string(candidates.size()) +
                                        " candidate relations exceed the limit of " +
                                        std::to_string(options.max_candidates));
  }
  const auto directions = directions_for(actions, options.direction_grid);
  const RationalMatrix& s = game.payoff_matrix();

  SearchResult result;
  result.candidates = candidates.size();
  std::vector<CandidateOutcome> outcomes(candidates.size());
  bool any_sign_ok = false;

  // Chunks keep "first found" equal to the lowest candidate index while
  // letting candidates inside a chunk run concurrently.
  constexpr std::size_t kChunk = 32;
  for (std::size_t begin = 0; begin < candidates.size(); begin += kChunk) {
    const std::size_t end = std::min(candidates.size(), begin + kChunk);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = begin; i < end; ++i) {
      CandidateOutcome& out = outcomes[i];
      const RationalVector target = s * candidates[i];
      out.sign = sign_feasibility(target, player, space);
      out.sign_ok = out.sign.feasible;
      if (!out.sign_ok) continue;
      for (const auto& d : directions) {
        auto strategy = solve_strategy_for_target(game, monitoring, player, target, d);
        if (strategy) {
          out.strategy = std::move(strategy);
          out.direction = d;
          break;
        }
      }
    }
    for (std::size_t i = begin; i < end; ++i) {
      if (outcomes[i].sign_ok) any_sign_ok = true;
      if (outcomes[i].strategy) {
        result.status = SearchStatus::kFound;
        result.found_index = i;
        result.alpha = candidates[i];
        result.direction = outcomes[i].direction;
        result.strategy = outcomes[i].strategy;
        const auto pd = press_dyson(*result.strategy, monitoring, space);
        result.certificate = detect_zd(pd, game);
        if (!result.certificate) fail(ErrorKind::kInvalidInput, "search produced a non-ZD strategy");
        return result;
      }
    }
  }

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!outcomes[i].sign_ok) result.pruned.push_back({candidates[i], outcomes[i].sign});
  }
  result.status = any_sign_ok ? SearchStatus::kInconclusive : SearchStatus::kPrunedNonexistence;
  return result;
}

}  // namespace zdlab
