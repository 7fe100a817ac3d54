#include <doctest.h>

#include <cmath>

#include "support/random_instances.hpp"
#include "zdlab/error.hpp"
#include "zdlab/markov.hpp"

using namespace zdlab;

namespace {

RationalMatrix columns(const std::vector<RationalVector>& cols) {
  return RationalMatrix::from_columns(cols, cols.front().size());
}

}  // namespace

TEST_SUITE("markov") {
TEST_CASE("two-state chain has the textbook stationary law") {
  const Rational a(1, 3), b(1, 7);
  const auto t = columns({{1 - a, a}, {b, 1 - b}});
  const auto r = stationary_distribution(t, point_mass(2, 0));
  CHECK(r.method == StationaryMethod::kExactSolve);
  REQUIRE(r.rho_exact.has_value());
  CHECK(*r.rho_exact == RationalVector{b / (a + b), a / (a + b)});
}

TEST_CASE("chain structure") {
  // 0 -> 1 <-> 2, 3 absorbing.
  const auto t = columns({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  const auto c = analyze_chain(t);
  CHECK(c.num_components == 3);
  CHECK(c.closed.size() == 2);
  CHECK_FALSE(c.irreducible());
}

TEST_CASE("unichain with a transient state is solved exactly") {
  const auto t = columns({{0, Rational(1, 2), Rational(1, 2)}, {0, 0, 1}, {0, 1, 0}});
  const auto r = stationary_distribution(t, point_mass(3, 0));
  REQUIRE(r.rho_exact.has_value());
  CHECK(*r.rho_exact == RationalVector{0, Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("Cesaro limit depends on the initial distribution") {
  // State 0 splits 1/4 : 3/4 between absorbing states 1 and 2.
  const auto t = columns({{0, Rational(1, 4), Rational(3, 4)}, {0, 1, 0}, {0, 0, 1}});
  const auto r = stationary_distribution(t, point_mass(3, 0));
  CHECK(r.method == StationaryMethod::kCesaroIteration);
  CHECK(r.closed_classes == 2);
  CHECK(std::abs(r.rho[1] - 0.25) < 1e-12);
  CHECK(std::abs(r.rho[2] - 0.75) < 1e-12);
  const auto s = stationary_distribution(t, point_mass(3, 2));
  CHECK(std::abs(s.rho[2] - 1.0) < 1e-12);
}

TEST_CASE("iteration cap raises a non-convergence error") {
  const auto t = columns({{0, Rational(1, 4), Rational(3, 4)}, {0, 1, 0}, {0, 0, 1}});
  StationaryOptions opt;
  opt.max_steps = 2;
  CHECK_THROWS_AS(stationary_distribution(t, point_mass(3, 0), opt), NonConvergenceError);
}

TEST_CASE("input validation") {
  const auto bad = columns({{Rational(1, 2), Rational(1, 3)}, {0, 1}});
  CHECK_THROWS_AS(stationary_distribution(bad, point_mass(2, 0)), Error);
  const auto t = columns({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(stationary_distribution(t, RationalVector{Rational(1, 2), Rational(1, 3)}), Error);
  CHECK_THROWS_AS(stationary_distribution(t, RationalVector{1}), Error);
}

TEST_CASE("exact solution is a fixed point for random irreducible chains") {
  zdtest::Random rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.integer(1, 12);
    std::vector<RationalVector> cols;
    for (std::size_t c = 0; c < m; ++c) cols.push_back(rng.distribution(m, true));
    const auto t = columns(cols);
    const auto r = stationary_distribution(t, point_mass(m, 0));
    REQUIRE(r.rho_exact.has_value());
    CHECK(t * *r.rho_exact == *r.rho_exact);
    Rational sum = 0;
    for (const auto& x : *r.rho_exact) sum += x;
    CHECK(sum == 1);
  }
}

TEST_CASE("parallel lazy step matches the serial kernel") {
  zdtest::Random rng(10);
  const std::size_t m = 40;
  std::vector<RationalVector> cols;
  for (std::size_t c = 0; c < m; ++c) cols.push_back(rng.distribution(m, false));
  const auto sparse = to_sparse_rows(columns(cols));
  std::vector<double> p(m, 1.0 / m), a(m), b(m);
  CHECK(lazy_step(sparse, p, a) == lazy_step_serial(sparse, p, b));
  CHECK(a == b);
}

TEST_CASE("expected payoffs and Akin residuals") {
  StateSpace space({2, 2});
  const Game g(space, {{1, 2, 3, 4}, {0, 0, 0, 8}});
  const RationalVector rho{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  CHECK(expected_payoffs(rho, g) == RationalVector{1, Rational(5, 2), 2});
}
}
