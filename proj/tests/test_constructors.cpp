#include <doctest.h>

#include <cmath>

#include "support/random_instances.hpp"
#include "zdlab/constructors.hpp"
#include "zdlab/error.hpp"
#include "zdlab/markov.hpp"

using namespace zdlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kInvalidInput;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

void check_matches_detection(const Game& g, const Construction& c) {
  const auto pd = press_dyson(c.strategy, c.monitoring, g.space());
  const auto detected = detect_zd(pd, g);
  REQUIRE(detected.has_value());
  CHECK(detected->relations == c.certificate.relations);
  CHECK(detected->dimension == c.certificate.dimension);
}

// Payoffs against `rounds` random opponents; returns the worst violation of
// any certificate relation (exact cases contribute 0 only when exact).
double worst_violation(const Game& g, const Construction& c, int rounds, std::uint64_t seed,
                       bool* all_exact_zero) {
  zdtest::Random rng(seed);
  double worst = 0;
  *all_exact_zero = true;
  for (int i = 0; i < rounds; ++i) {
    std::vector<MemoryOneStrategy> profile{c.strategy,
                                           zdtest::random_strategy(rng, 1, g.space(), c.monitoring, false)};
    const auto t = assemble_transition(profile, c.monitoring, g.space());
    const auto st = stationary_distribution(t, point_mass(g.num_states(), 0));
    for (const auto& r : c.certificate.relations) {
      if (st.rho_exact) {
        const auto e = expected_payoffs(*st.rho_exact, g);
        Rational dot = 0;
        for (std::size_t k = 0; k < e.size(); ++k) dot += e[k] * r.alpha[k];
        if (dot != 0) *all_exact_zero = false;
      } else {
        const auto e = expected_payoffs(st, g);
        double dot = 0;
        for (std::size_t k = 0; k < e.size(); ++k) dot += e[k] * to_double(r.alpha[k]);
        worst = std::max(worst, std::abs(dot));
      }
    }
  }
  return worst;
}

const ControllerParams kS22{Rational(1, 5), Rational(1, 10), Rational(1, 4), Rational(3, 10)};

}  // namespace

TEST_SUITE("constructors") {
TEST_CASE("tit-for-tat") {
  for (const Game& g : {prisoners_dilemma(3, 0, 5, 1), prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2))}) {
    const auto c = make_tit_for_tat(g);
    CHECK(c.certificate.dimension == 1);
    CHECK(describe(c.certificate.relations[0]) == "e1 - e2 = 0");
    check_matches_detection(g, c);
  }
  CHECK(kind_of([] { make_tit_for_tat(prisoners_dilemma(3, 2, 2, 1)); }) == ErrorKind::kInfeasibleParameters);
  CHECK(kind_of([] { make_tit_for_tat(rock_paper_scissors()); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("equalizer under win-lose monitoring") {
  const Game g = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  const EqualizerParams params{Rational(-3, 125), Rational(33, 500)};
  CHECK(params.target() == Rational(11, 4));
  const auto c = make_equalizer_imperfect(g, Rational(1, 5), params);
  CHECK(c.strategy.probability(0, 0, 0) == Rational(99, 100));
  CHECK(c.strategy.probability(0, 0, 1) == Rational(19, 20));
  CHECK(c.strategy.probability(0, 1, 0) == Rational(1, 20));
  CHECK(c.strategy.probability(0, 1, 1) == Rational(1, 100));
  CHECK(describe(c.certificate.relations[0]) == "e2 = 11/4");
  check_matches_detection(g, c);

  const auto half = make_equalizer_imperfect(g, Rational(1, 5), {params.beta / 2, params.gamma / 2});
  CHECK(half.certificate.relations == c.certificate.relations);

  CHECK(message_of([&] { make_equalizer_imperfect(g, Rational(1, 2), params); }).find("w = 1/2") != std::string::npos);
  CHECK(kind_of([&] { make_equalizer_imperfect(g, Rational(1, 5), {Rational(-1), Rational(1)}); }) ==
        ErrorKind::kInfeasibleParameters);
  CHECK(kind_of([&] { make_equalizer_imperfect(g, Rational(1, 5), {0, Rational(1, 2)}); }) ==
        ErrorKind::kInfeasibleParameters);
}

TEST_CASE("equalizer at w = 2/5 has no feasible table for these payoffs") {
  // Entries are k_i beta + gamma (+1) with k = (3/2, 13/2, -1, 4); pinning
  // e2 = t needs both t <= 3/2 and t >= 4 (beta < 0) or t >= 13/2 and
  // t <= -1 (beta > 0), so every target is rejected.
  const Game g = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  CHECK(kind_of([&] { make_equalizer_imperfect(g, Rational(2, 5), {Rational(-3, 125), Rational(33, 500)}); }) ==
        ErrorKind::kInfeasibleParameters);
  for (int num = -8; num <= 8; ++num) {
    for (const Rational beta : {Rational(-1, 100), Rational(1, 100)}) {
      const Rational t = Rational(num) / 2;
      CHECK_THROWS_AS(make_equalizer_imperfect(g, Rational(2, 5), {beta, -t * beta}), Error);
    }
  }
}

TEST_CASE("equalizer pins e2 against random opponents") {
  const Game g = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  for (const Rational w : {Rational(1, 5), Rational(1, 10)}) {
    const auto c = make_equalizer_imperfect(g, w, {Rational(-3, 125), Rational(33, 500)});
    check_matches_detection(g, c);
    bool exact = true;
    const double worst = worst_violation(g, c, 100, 31, &exact);
    CHECK(exact);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("simultaneous controller") {
  const auto c = make_simultaneous_controller(2, 1, kS22);
  const Game g = two_reward_game(2, 1);
  CHECK(c.certificate.dimension == 2);
  REQUIRE(c.certificate.relations.size() == 2);
  CHECK(describe(c.certificate.relations[0]) == "e1 = 0");
  CHECK(describe(c.certificate.relations[1]) == "e2 = 0");
  check_matches_detection(g, c);

  // Witness combination of T~(1), T~(2) reproduces s_1 and s_2.
  const auto pd = press_dyson(c.strategy, c.monitoring, g.space());
  const Rational d = kS22.p_prime * kS22.q - kS22.p * kS22.q_prime;
  const Rational a1 = (kS22.q_prime * 2 + kS22.q * 1) / d;
  const Rational b1 = (kS22.p_prime * 2 + kS22.p * 1) / d;
  const Rational a2 = (kS22.q_prime * 1 + kS22.q * 2) / d;
  const Rational b2 = (kS22.p_prime * 1 + kS22.p * 2) / d;
  for (std::size_t s = 0; s < 9; ++s) {
    CHECK(a1 * pd.matrix(s, 0) + b1 * pd.matrix(s, 1) == g.payoff(0)[s]);
    CHECK(a2 * pd.matrix(s, 0) + b2 * pd.matrix(s, 1) == g.payoff(1)[s]);
  }

  bool exact = true;
  const double worst = worst_violation(g, c, 100, 32, &exact);
  CHECK(worst <= 1e-10);

  CHECK(message_of([] { make_simultaneous_controller(1, 1, kS22); }).find("r1 = r2") != std::string::npos);
  CHECK(kind_of([] { make_simultaneous_controller(1, -1, kS22); }) == ErrorKind::kInfeasibleParameters);
  CHECK(message_of([] {
          make_simultaneous_controller(2, 1, {Rational(1, 10), Rational(1, 5), Rational(1, 4), Rational(3, 10)});
        }).find("q <= p") != std::string::npos);
  CHECK(message_of([] {
          make_simultaneous_controller(2, 1, {Rational(1, 5), Rational(1, 10), Rational(2, 5), Rational(1, 5)});
        }).find("p' <= q'") != std::string::npos);
  CHECK(message_of([] {
          make_simultaneous_controller(2, 1, {Rational(1, 5), Rational(1, 5), Rational(1, 4), Rational(1, 4)});
        }).find("p'q = pq'") != std::string::npos);
  CHECK(kind_of([] {
          make_simultaneous_controller(2, 1, {Rational(6, 5), Rational(1, 10), Rational(1, 4), Rational(3, 10)});
        }) == ErrorKind::kInfeasibleParameters);
}

TEST_CASE("symmetric game corollary on the controller") {
  const Game g = two_reward_game(2, 1);
  CHECK(is_symmetric_under(g, Permutation({1, 0})));
  const auto c = make_simultaneous_controller(2, 1, kS22);
  const auto sys = consistency_check(c.certificate.relations, 2);
  REQUIRE(sys.consistent);
  CHECK(sys.directions.empty());
  CHECK((*sys.particular)[0] == (*sys.particular)[1]);
}

TEST_CASE("imperfect controller marginal equals the perfect one") {
  const auto perfect = make_simultaneous_controller(2, 1, kS22);
  const auto imperfect = make_simultaneous_controller_imperfect(2, 1, Rational(9, 10), kS22);
  const Game g = two_reward_game(2, 1);
  const auto a = marginal_transition(perfect.strategy, perfect.monitoring, g.space());
  const auto b = marginal_transition(imperfect.strategy, imperfect.monitoring, g.space());
  CHECK(a.matrix == b.matrix);
  CHECK(imperfect.certificate.relations == perfect.certificate.relations);
  check_matches_detection(g, imperfect);

  // w = 1 allows the full unit box.
  const ControllerParams wide{1, 0, 0, 1};
  CHECK_NOTHROW(make_simultaneous_controller_imperfect(2, 1, 1, wide));
  CHECK(kind_of([&] { make_simultaneous_controller_imperfect(2, 1, Rational(1, 2), wide); }) ==
        ErrorKind::kInfeasibleParameters);

  // p = w, q = 0 edge.
  const Rational w(9, 10);
  const auto edge = make_simultaneous_controller_imperfect(2, 1, w, {w, 0, Rational(1, 4), Rational(3, 10)});
  for (const auto& x : edge.strategy.table()) CHECK(is_probability(x));
  CHECK(edge.strategy.probability(0, 0, 0) == 0);
  CHECK(edge.strategy.probability(2, 0, 0) == 1);
}

TEST_CASE("zero-sum controller") {
  const ControllerParams params{Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 2)};
  const auto c = make_zero_sum_controller(1, params);
  const Game g = zero_sum_reward_game(1);
  REQUIRE(c.certificate.dimension >= 1);
  CHECK(describe(c.certificate.relations[0]) == "e1 = 0");
  CHECK(c.certificate.nonunique());
  check_matches_detection(g, c);

  const auto pd = press_dyson(c.strategy, c.monitoring, g.space());
  const Rational d = params.p_prime * params.q - params.p * params.q_prime;
  const Rational a = (params.q_prime - params.q) / d;
  const Rational b = (params.p_prime - params.p) / d;
  for (std::size_t s = 0; s < 9; ++s) CHECK(a * pd.matrix(s, 0) + b * pd.matrix(s, 1) == g.payoff(0)[s]);

  bool exact = true;
  CHECK(worst_violation(g, c, 100, 33, &exact) <= 1e-10);
  CHECK(kind_of([] { make_zero_sum_controller(0, {Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 2)}); }) ==
        ErrorKind::kInfeasibleParameters);
}
}
