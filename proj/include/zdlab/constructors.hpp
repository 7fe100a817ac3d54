#pragma once

#include "zdlab/game.hpp"
#include "zdlab/rational.hpp"
#include "zdlab/strategy.hpp"
#include "zdlab/zd.hpp"

namespace zdlab {

// s_1 = (R, S, T, P), s_2 = (R, T, S, P).
Game prisoners_dilemma(const Rational& r, const Rational& s, const Rational& t, const Rational& p);

// Two signals "1", "2" with W(1|1,1) = W(1|2,2) = 1/2, W(1|1,2) = w, W(1|2,1) = 1 - w.
MonitoringStructure win_lose_monitoring(const Rational& w);

// 3x3 game with s_1(1,2) = s_2(2,1) = r1, s_1(2,1) = s_2(1,2) = r2, all else 0.
Game two_reward_game(const Rational& r1, const Rational& r2);

// Signals "y", "n"; y appears with probability w after (1,2) or (2,1), never otherwise.
MonitoringStructure nonzero_payoff_monitoring(const Rational& w);

// 3x3 zero-sum game with s_1(1,2) = r, s_1(2,1) = -r, s_2 = -s_1.
Game zero_sum_reward_game(const Rational& r);

Game rock_paper_scissors();

struct EqualizerParams {
  Rational beta;
  Rational gamma;

  Rational target() const { return -gamma / beta; }
};

struct ControllerParams {
  Rational p;
  Rational q;
  Rational p_prime;
  Rational q_prime;
};

struct Construction {
  MonitoringStructure monitoring;
  MemoryOneStrategy strategy;
  ZdCertificate certificate;
};

// Errors for invalid parameters are Error(kInfeasibleParameters) naming the
// violated constraint.

// Perfect monitoring; game must be in the prisoner's dilemma layout.
Construction make_tit_for_tat(const Game& game, std::size_t player = 0);

// Player 1 under win_lose_monitoring(w), enforcing e_2 = -gamma / beta.
Construction make_equalizer_imperfect(const Game& game, const Rational& w,
                                      const EqualizerParams& params);

// Player 1 in two_reward_game(r1, r2), perfect monitoring, enforcing e_1 = e_2 = 0.
Construction make_simultaneous_controller(const Rational& r1, const Rational& r2,
                                          const ControllerParams& params);

// Same relations under nonzero_payoff_monitoring(w); parameters bounded by w.
Construction make_simultaneous_controller_imperfect(const Rational& r1, const Rational& r2,
                                                    const Rational& w,
                                                    const ControllerParams& params);

// Player 1 in zero_sum_reward_game(r), perfect monitoring, enforcing e_1 = 0.
Construction make_zero_sum_controller(const Rational& r, const ControllerParams& params);

}  // namespace zdlab
