#include "zdlab/constructors.hpp"

#include <stdexcept>
#include <utility>

#include "zdlab/error.hpp"

namespace zdlab {
namespace {

using Pair = std::pair<RationalVector, RationalVector>;

[[noreturn]] void infeasible(const std::string& what) {
  fail(ErrorKind::kInfeasibleParameters, what);
}

void require_unit(const Rational& value, const std::string& name, const Rational& upper) {
  if (value < 0 || value > upper) {
    infeasible(name + " = " + to_string(value) + " outside [0, " + to_string(upper) + "]");
  }
}

RationalVector alpha_for(std::size_t players, std::size_t n, const Rational& coeff,
                         const Rational& constant = 0) {
  RationalVector a(players + 1);
  a[0] = constant;
  a[n] = coeff;
  return a;
}

// Certificate from closed-form witnesses, cross-checked against detection.
ZdCertificate certify(const Game& game, const MemoryOneStrategy& strategy,
                      const MonitoringStructure& monitoring, std::span<const Pair> pairs) {
  const auto pd = press_dyson(strategy, monitoring, game.space());
  ZdCertificate cert = certificate_from_pairs(pd, game, pairs);
  const auto detected = detect_zd(pd, game);
  if (!detected || detected->relations != cert.relations || detected->dimension != cert.dimension) {
    throw std::logic_error("closed-form certificate disagrees with detection");
  }
  return cert;
}

void validate_controller(const ControllerParams& c, const Rational& upper) {
  require_unit(c.p, "p", upper);
  require_unit(c.q, "q", upper);
  require_unit(c.p_prime, "p'", upper);
  require_unit(c.q_prime, "q'", upper);
  if (c.q > c.p) infeasible("q <= p violated");
  if (c.p_prime > c.q_prime) infeasible("p' <= q' violated");
  if (c.p_prime * c.q == c.p * c.q_prime) infeasible("degenerate controller: p'q = pq'");
}

void validate_rewards(const Rational& r1, const Rational& r2) {
  if (r1 == r2) infeasible("degenerate rewards: r1 = r2");
  if (r1 == -r2) infeasible("degenerate rewards: r1 = -r2");
}

// Rows T_1(. | sigma') of the 3x3 controller, indexed by joint state.
std::vector<RationalVector> controller_rows(const ControllerParams& c) {
  const Rational& p = c.p;
  const Rational& q = c.q;
  const Rational& pp = c.p_prime;
  const Rational& qp = c.q_prime;
  const RationalVector t1{1, 1 - p, 1, pp, 0, 0, 0, 0, 0};
  const RationalVector t2{0, q, 0, 1 - qp, 1, 1, 0, 0, 0};
  const RationalVector t3{0, p - q, 0, qp - pp, 0, 0, 1, 1, 1};
  std::vector<RationalVector> rows(9);
  for (std::size_t s = 0; s < 9; ++s) rows[s] = {t1[s], t2[s], t3[s]};
  return rows;
}

std::vector<Pair> controller_pairs(const Rational& r1, const Rational& r2,
                                   const ControllerParams& c) {
  const Rational d = c.p_prime * c.q - c.p * c.q_prime;
  std::vector<Pair> pairs;
  pairs.emplace_back(alpha_for(2, 1, 1), RationalVector{(c.q_prime * r1 + c.q * r2) / d,
                                                        (c.p_prime * r1 + c.p * r2) / d, 0});
  pairs.emplace_back(alpha_for(2, 2, 1), RationalVector{(c.q_prime * r2 + c.q * r1) / d,
                                                        (c.p_prime * r2 + c.p * r1) / d, 0});
  return pairs;
}

}  // namespace

Game prisoners_dilemma(const Rational& r, const Rational& s, const Rational& t, const Rational& p) {
  return Game(StateSpace({2, 2}), {{r, s, t, p}, {r, t, s, p}});
}

MonitoringStructure win_lose_monitoring(const Rational& w) {
  if (w < 0 || w > 1) infeasible("w = " + to_string(w) + " outside [0, 1]");
  const Rational half(1, 2);
  const RationalVector first{half, w, 1 - w, half};
  std::vector<RationalVector> law;
  for (const auto& x : first) law.push_back({x, 1 - x});
  return MonitoringStructure({"1", "2"}, RationalMatrix::from_rows(law, 2));
}

Game two_reward_game(const Rational& r1, const Rational& r2) {
  return Game(StateSpace({3, 3}),
              {{0, r1, 0, r2, 0, 0, 0, 0, 0}, {0, r2, 0, r1, 0, 0, 0, 0, 0}});
}

MonitoringStructure nonzero_payoff_monitoring(const Rational& w) {
  if (w <= 0 || w > 1) infeasible("w = " + to_string(w) + " outside (0, 1]");
  std::vector<RationalVector> law(9, RationalVector{0, 1});
  law[1] = {w, 1 - w};
  law[3] = {w, 1 - w};
  return MonitoringStructure({"y", "n"}, RationalMatrix::from_rows(law, 2));
}

Game zero_sum_reward_game(const Rational& r) {
  return Game(StateSpace({3, 3}),
              {{0, r, 0, -r, 0, 0, 0, 0, 0}, {0, -r, 0, r, 0, 0, 0, 0, 0}});
}

Game rock_paper_scissors() {
  return Game(StateSpace({3, 3}),
              {{0, 1, -1, -1, 0, 1, 1, -1, 0}, {0, -1, 1, 1, 0, -1, -1, 1, 0}});
}

Construction make_tit_for_tat(const Game& game, std::size_t player) {
  const StateSpace& space = game.space();
  if (space.action_counts() != std::vector<std::size_t>{2, 2}) {
    fail(ErrorKind::kInvalidInput, "tit-for-tat needs a 2x2 game");
  }
  if (player > 1) fail(ErrorKind::kInvalidInput, "player out of range");
  const auto& s1 = game.payoff(0);
  const auto& s2 = game.payoff(1);
  if (s2 != RationalVector{s1[0], s1[2], s1[1], s1[3]}) {
    fail(ErrorKind::kInvalidInput, "game is not in (R,S,T,P)/(R,T,S,P) layout");
  }
  const Rational t_minus_s = s1[2] - s1[1];
  if (t_minus_s == 0) infeasible("degenerate payoffs: T = S");

  auto monitoring = MonitoringStructure::perfect(space);
  const std::size_t other = 1 - player;
  std::vector<RationalVector> rows;
  for (std::size_t s = 0; s < space.size(); ++s) {
    const bool cooperate = space.action_of(s, other) == 0;
    rows.push_back(cooperate ? RationalVector{1, 0} : RationalVector{0, 1});
  }
  auto strategy = MemoryOneStrategy::from_state_rows(player, space, rows);
  // T~_n(1) = +-(s_1 - s_2) / (T - S); player 2's vector has the opposite sign.
  const Rational c = player == 0 ? t_minus_s : -t_minus_s;
  const std::vector<Pair> pairs{{RationalVector{0, 1, -1}, RationalVector{c, 0}}};
  auto cert = certify(game, strategy, monitoring, pairs);
  return {std::move(monitoring), std::move(strategy), std::move(cert)};
}

Construction make_equalizer_imperfect(const Game& game, const Rational& w,
                                      const EqualizerParams& params) {
  if (game.space().action_counts() != std::vector<std::size_t>{2, 2}) {
    fail(ErrorKind::kInvalidInput, "equalizer needs a 2x2 game");
  }
  const auto& s1 = game.payoff(0);
  const auto& s2 = game.payoff(1);
  if (s2 != RationalVector{s1[0], s1[2], s1[1], s1[3]}) {
    fail(ErrorKind::kInvalidInput, "game is not in (R,S,T,P)/(R,T,S,P) layout");
  }
  if (w * 2 == 1) infeasible("singular monitoring: w = 1/2");
  if (params.beta == 0) infeasible("beta must be nonzero");
  auto monitoring = win_lose_monitoring(w);

  const Rational& r = s1[0];
  const Rational& s = s1[1];
  const Rational& t = s1[2];
  const Rational& p = s1[3];
  const Rational& beta = params.beta;
  const Rational& gamma = params.gamma;
  const Rational denom = 1 - 2 * w;
  // Probability of action 1 given (own previous action, signal).
  const Rational cooperate[2][2] = {
      {(2 * (1 - w) * r - t) / denom * beta + gamma + 1, (t - 2 * w * r) / denom * beta + gamma + 1},
      {(s - 2 * w * p) / denom * beta + gamma, (2 * (1 - w) * p - s) / denom * beta + gamma}};
  std::vector<Rational> table;
  for (std::size_t prev = 0; prev < 2; ++prev) {
    for (std::size_t tau = 0; tau < 2; ++tau) {
      const Rational& x = cooperate[prev][tau];
      if (x < 0 || x > 1) {
        infeasible("T^1(1|" + std::to_string(prev + 1) + "," + std::to_string(tau + 1) +
                   ") = " + to_string(x) + " outside [0, 1]");
      }
      table.push_back(x);
      table.push_back(1 - x);
    }
  }
  MemoryOneStrategy strategy(0, 2, 2, std::move(table));
  const std::vector<Pair> pairs{{RationalVector{gamma, 0, beta}, RationalVector{1, 0}}};
  auto cert = certify(game, strategy, monitoring, pairs);
  return {std::move(monitoring), std::move(strategy), std::move(cert)};
}

Construction make_simultaneous_controller(const Rational& r1, const Rational& r2,
                                          const ControllerParams& params) {
  validate_rewards(r1, r2);
  validate_controller(params, 1);
  const Game game = two_reward_game(r1, r2);
  auto monitoring = MonitoringStructure::perfect(game.space());
  auto strategy = MemoryOneStrategy::from_state_rows(0, game.space(), controller_rows(params));
  const auto pairs = controller_pairs(r1, r2, params);
  auto cert = certify(game, strategy, monitoring, pairs);
  return {std::move(monitoring), std::move(strategy), std::move(cert)};
}

Construction make_simultaneous_controller_imperfect(const Rational& r1, const Rational& r2,
                                                    const Rational& w,
                                                    const ControllerParams& params) {
  validate_rewards(r1, r2);
  if (w <= 0 || w > 1) infeasible("w = " + to_string(w) + " outside (0, 1]");
  validate_controller(params, w);
  const Game game = two_reward_game(r1, r2);
  auto monitoring = nonzero_payoff_monitoring(w);
  const Rational& p = params.p;
  const Rational& q = params.q;
  const Rational& pp = params.p_prime;
  const Rational& qp = params.q_prime;
  // [prev][signal y/n] -> distribution over the three actions.
  const RationalVector rows[3][2] = {
      {{(w - p) / w, q / w, (p - q) / w}, {1, 0, 0}},
      {{pp / w, (w - qp) / w, (qp - pp) / w}, {0, 1, 0}},
      {{0, 0, 1}, {0, 0, 1}}};
  std::vector<Rational> table;
  for (const auto& prev : rows) {
    for (const auto& dist : prev) table.insert(table.end(), dist.begin(), dist.end());
  }
  MemoryOneStrategy strategy(0, 3, 2, std::move(table));
  const auto pairs = controller_pairs(r1, r2, params);
  auto cert = certify(game, strategy, monitoring, pairs);
  return {std::move(monitoring), std::move(strategy), std::move(cert)};
}

Construction make_zero_sum_controller(const Rational& r, const ControllerParams& params) {
  if (r == 0) infeasible("r must be nonzero");
  validate_controller(params, 1);
  const Game game = zero_sum_reward_game(r);
  auto monitoring = MonitoringStructure::perfect(game.space());
  auto strategy = MemoryOneStrategy::from_state_rows(0, game.space(), controller_rows(params));
  const Rational d = params.p_prime * params.q - params.p * params.q_prime;
  const std::vector<Pair> pairs{
      {alpha_for(2, 1, 1), RationalVector{r * (params.q_prime - params.q) / d,
                                          r * (params.p_prime - params.p) / d, 0}}};
  auto cert = certify(game, strategy, monitoring, pairs);
  return {std::move(monitoring), std::move(strategy), std::move(cert)};
}

}  // namespace zdlab
