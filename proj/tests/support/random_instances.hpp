#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/linalg.hpp"
#include "zdlab/strategy.hpp"

namespace zdtest {

using namespace zdlab;

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Rational rational(int max_num, int max_den) {
    Rational r(integer(-max_num, max_num), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(int max_num, int max_den) {
    for (;;) {
      Rational r = rational(max_num, max_den);
      if (r != 0) return r;
    }
  }

  // interior: every entry positive. Otherwise some entries may be zero.
  RationalVector distribution(std::size_t k, bool interior) {
    std::vector<int> w(k);
    int total = 0;
    do {
      total = 0;
      for (auto& x : w) {
        x = interior ? integer(1, 6) : (coin(0.3) ? 0 : integer(1, 6));
        total += x;
      }
    } while (total == 0);
    RationalVector out(k);
    for (std::size_t i = 0; i < k; ++i) {
      out[i] = Rational(w[i], total);
      out[i].canonicalize();
    }
    return out;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline StateSpace random_space(Random& rng, int min_players, int max_players, int min_actions,
                               int max_actions) {
  std::vector<std::size_t> counts(rng.integer(min_players, max_players));
  for (auto& c : counts) c = rng.integer(min_actions, max_actions);
  return StateSpace(counts);
}

inline RationalVector random_payoff(Random& rng, std::size_t m) {
  RationalVector s(m);
  for (auto& x : s) x = rng.rational(5, 3);
  return s;
}

// Perfect monitoring a quarter of the time, otherwise 1-3 signals.
inline MonitoringStructure random_monitoring(Random& rng, const StateSpace& space, bool interior) {
  if (rng.coin(0.25)) return MonitoringStructure::perfect(space);
  const std::size_t signals = rng.integer(1, 3);
  std::vector<RationalVector> rows;
  for (std::size_t s = 0; s < space.size(); ++s) rows.push_back(rng.distribution(signals, interior));
  std::vector<std::string> names;
  for (std::size_t b = 0; b < signals; ++b) names.push_back("b" + std::to_string(b + 1));
  return MonitoringStructure(names, RationalMatrix::from_rows(rows, signals));
}

inline MemoryOneStrategy random_strategy(Random& rng, std::size_t player, const StateSpace& space,
                                         const MonitoringStructure& monitoring, bool interior) {
  const std::size_t actions = space.action_count(player);
  std::vector<Rational> table;
  for (std::size_t prev = 0; prev < actions; ++prev) {
    for (std::size_t tau = 0; tau < monitoring.num_signals(); ++tau) {
      const auto d = rng.distribution(actions, interior);
      table.insert(table.end(), d.begin(), d.end());
    }
  }
  return MemoryOneStrategy(player, actions, monitoring.num_signals(), std::move(table));
}

inline RationalVector random_nonconstant(Random& rng, std::size_t k) {
  for (;;) {
    RationalVector c(k);
    for (auto& x : c) x = rng.integer(-4, 4);
    if (std::any_of(c.begin(), c.end(), [&](const Rational& x) { return x != c.front(); })) return c;
  }
}

struct PlantedInstance {
  Game game;
  MonitoringStructure monitoring;
  std::vector<MemoryOneStrategy> strategies;  // one per player
  std::vector<std::size_t> zd_players;
  std::vector<RationalVector> planted_alpha;  // one per ZD player
};

struct PlantOptions {
  int min_players = 2;
  int max_players = 3;
  int min_actions = 2;
  int max_actions = 4;
  int min_zd = 1;
  int max_zd = 3;
  bool interior = false;
};

// Random strategies for everyone; for each chosen ZD player a vector
// v = T~_n c is planted into span S by solving for that player's payoff
// vector, so dim V_n >= 1 by construction.
inline PlantedInstance planted_instance(Random& rng, const PlantOptions& o) {
  for (;;) {
    StateSpace space = random_space(rng, o.min_players, o.max_players, o.min_actions, o.max_actions);
    const std::size_t n = space.num_players();
    MonitoringStructure monitoring = random_monitoring(rng, space, o.interior);
    std::vector<MemoryOneStrategy> strategies;
    for (std::size_t k = 0; k < n; ++k) strategies.push_back(random_strategy(rng, k, space, monitoring, o.interior));

    std::vector<std::size_t> players(n);
    std::iota(players.begin(), players.end(), 0);
    std::shuffle(players.begin(), players.end(), rng.engine());
    const std::size_t zd = std::min<std::size_t>(n, rng.integer(o.min_zd, o.max_zd));
    players.resize(zd);

    std::vector<RationalVector> payoffs(n);
    std::vector<bool> planted(n, false);
    for (auto p : players) planted[p] = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (!planted[k]) payoffs[k] = random_payoff(rng, space.size());
    }
    std::vector<RationalVector> alphas;
    bool ok = true;
    for (auto p : players) {
      const auto pd = press_dyson(strategies[p], monitoring, space);
      const RationalVector v = pd.matrix * random_nonconstant(rng, pd.matrix.cols());
      if (is_zero(v)) {
        ok = false;
        break;
      }
      RationalVector alpha(n + 1);
      alpha[0] = rng.rational(3, 2);
      alpha[p + 1] = rng.nonzero_rational(3, 2);
      for (std::size_t k = 0; k < n; ++k) {
        if (!planted[k]) alpha[k + 1] = rng.rational(3, 2);
      }
      RationalVector s(space.size());
      for (std::size_t i = 0; i < space.size(); ++i) {
        Rational rest = v[i] - alpha[0];
        for (std::size_t k = 0; k < n; ++k) {
          if (!planted[k]) rest -= alpha[k + 1] * payoffs[k][i];
        }
        s[i] = rest / alpha[p + 1];
      }
      payoffs[p] = std::move(s);
      alphas.push_back(std::move(alpha));
    }
    if (!ok) continue;
    return {Game(std::move(space), std::move(payoffs)), std::move(monitoring), std::move(strategies),
            std::move(players), std::move(alphas)};
  }
}

// s_2(a, b) = s_1(b, a) for a square 2-player space.
inline RationalVector swap_players(const RationalVector& s1, std::size_t actions) {
  RationalVector s2(s1.size());
  for (std::size_t a = 0; a < actions; ++a) {
    for (std::size_t b = 0; b < actions; ++b) s2[a * actions + b] = s1[b * actions + a];
  }
  return s2;
}

struct SymmetricInstance {
  Game game;
  MonitoringStructure monitoring;
  MemoryOneStrategy strategy;  // player 0
};

// Symmetric 2-player game in which player 1's random strategy is ZD:
// (a1 I + a2 P) s_1 = T~_1 c - a0 1 with P the player swap, a1 != +-a2.
inline SymmetricInstance planted_symmetric(Random& rng, int min_actions, int max_actions, bool interior) {
  for (;;) {
    const std::size_t k = rng.integer(min_actions, max_actions);
    StateSpace space({k, k});
    MonitoringStructure monitoring = rng.coin(0.5) ? MonitoringStructure::perfect(space)
                                                   : random_monitoring(rng, space, interior);
    MemoryOneStrategy strategy = random_strategy(rng, 0, space, monitoring, interior);
    const auto pd = press_dyson(strategy, monitoring, space);
    const RationalVector v = pd.matrix * random_nonconstant(rng, k);
    if (is_zero(v)) continue;
    const Rational a0 = rng.rational(3, 2);
    const Rational a1 = rng.nonzero_rational(3, 2);
    const Rational a2 = rng.rational(3, 2);
    if (a1 == a2 || a1 == -a2) continue;
    const std::size_t m = space.size();
    RationalMatrix a(m, m);
    RationalVector b(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i % k) * k + i / k;
      a(i, i) += a1;
      a(i, j) += a2;
      b[i] = v[i] - a0;
    }
    RationalVector s1 = solve_square(a, b);
    RationalVector s2 = swap_players(s1, k);
    return {Game(std::move(space), {std::move(s1), std::move(s2)}), std::move(monitoring), std::move(strategy)};
  }
}

}  // namespace zdtest
