#include <doctest.h>

#include "zdlab/constructors.hpp"
#include "zdlab/error.hpp"
#include "zdlab/game.hpp"

using namespace zdlab;

TEST_SUITE("game") {
TEST_CASE("state indexing round trips") {
  StateSpace space({2, 3, 2});
  CHECK(space.size() == 12);
  for (std::size_t i = 0; i < space.size(); ++i) CHECK(space.index(space.decode(i)) == i);
  CHECK(space.index(ActionProfile{1, 2, 0}) == 1 * 6 + 2 * 2 + 0);
  CHECK(space.action_of(11, 1) == 2);
  CHECK(space.label(0) == "1,1,1");
  CHECK(space.label(11) == "2,3,2");
  CHECK_THROWS_AS(space.index(ActionProfile{2, 0, 0}), Error);
}

TEST_CASE("state space validation") {
  CHECK_THROWS_AS(StateSpace(std::vector<std::size_t>{}), Error);
  CHECK_THROWS_AS(StateSpace(std::vector<std::size_t>{2, 0}), Error);
  try {
    StateSpace(std::vector<std::size_t>(30, 2));
    FAIL("expected a resource limit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kResourceLimit);
  }
}

TEST_CASE("payoff matrix layout") {
  const Game g = prisoners_dilemma(3, 0, 5, 1);
  const auto& s = g.payoff_matrix();
  CHECK(s.rows() == 4);
  CHECK(s.cols() == 3);
  CHECK(s.column(0) == RationalVector{1, 1, 1, 1});
  CHECK(s.column(1) == RationalVector{3, 0, 5, 1});
  CHECK(s.column(2) == RationalVector{3, 5, 0, 1});
  CHECK_THROWS_AS(Game(StateSpace({2, 2}), {{1, 2, 3, 4}}), Error);
  CHECK_THROWS_AS(Game(StateSpace({2, 2}), {{1, 2, 3}, {1, 2, 3, 4}}), Error);
}

TEST_CASE("permutations") {
  CHECK_THROWS_AS(Permutation({0, 0}), Error);
  CHECK_THROWS_AS(Permutation({0, 2}), Error);
  const Permutation p({1, 2, 0});
  const Permutation q({2, 0, 1});
  CHECK(p.compose(q) == Permutation::identity(3));
  CHECK(p.permute_profile(ActionProfile{5, 6, 7}) == ActionProfile{6, 7, 5});
}

TEST_CASE("symmetry of the two-player examples") {
  const Permutation swap({1, 0});
  CHECK(is_symmetric_under(prisoners_dilemma(3, 0, 5, 1), swap));
  CHECK(is_symmetric_under(rock_paper_scissors(), swap));
  CHECK(is_symmetric_under(two_reward_game(2, 1), swap));
  CHECK(is_weakly_symmetric(prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2))).weakly_symmetric);
  const Game skew(StateSpace({2, 2}), {{1, 2, 3, 4}, {1, 2, 3, 5}});
  CHECK_FALSE(is_weakly_symmetric(skew).weakly_symmetric);
}

TEST_CASE("three-player weak symmetry") {
  // Payoff of a player depends on own action and the number of others playing 0.
  StateSpace space({2, 2, 2});
  std::vector<RationalVector> s(3, RationalVector(8));
  for (std::size_t i = 0; i < 8; ++i) {
    const auto p = space.decode(i);
    for (std::size_t n = 0; n < 3; ++n) {
      int zeros = 0;
      for (std::size_t k = 0; k < 3; ++k) zeros += (k != n && p[k] == 0);
      s[n][i] = Rational(3 * zeros + 1, 1) - Rational(p[n] == 0 ? 2 : 0);
    }
  }
  const Game g(space, s);
  const auto ws = is_weakly_symmetric(g);
  CHECK(ws.weakly_symmetric);
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t m = 0; m < 3; ++m) {
      REQUIRE(ws.witnesses[n][m].has_value());
      CHECK((*ws.witnesses[n][m])(n) == m);
      CHECK(is_symmetric_under(g, *ws.witnesses[n][m]));
    }
  s[2][0] += 1;
  CHECK_FALSE(is_weakly_symmetric(Game(space, s)).weakly_symmetric);
}
}
