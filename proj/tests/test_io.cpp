#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support/random_instances.hpp"
#include "zdlab/constructors.hpp"
#include "zdlab/error.hpp"
#include "zdlab/io.hpp"

using namespace zdlab;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {
TEST_CASE("rationals") {
  CHECK(rational_from_json(Json("3/4"), "x") == Rational(3, 4));
  CHECK(rational_from_json(Json(-2), "x") == -2);
  CHECK(rational_from_json(Json(0.1), "x") == Rational(1, 10));
  CHECK(rational_from_json(Json("0.25"), "x") == Rational(1, 4));
  CHECK(error_of([] { rational_from_json(Json("x/2"), "payoffs[0][1]"); }).rfind("payoffs[0][1]", 0) == 0);
  CHECK(error_of([] { rational_from_json(Json(true), "w"); }).rfind("w", 0) == 0);
  CHECK(to_json(Rational(-3, 125)) == Json("-3/125"));
}

TEST_CASE("game round trip and field errors") {
  const Game g = prisoners_dilemma(4, 1, Rational(9, 2), Rational(3, 2));
  const Game back = game_from_json(to_json(g));
  CHECK(back.space() == g.space());
  CHECK(back.payoffs() == g.payoffs());

  Json bad = to_json(g);
  bad["payoffs"][1][2] = "oops";
  CHECK(error_of([&] { game_from_json(bad); }).rfind("payoffs[1][2]", 0) == 0);
  Json short_row = to_json(g);
  short_row["payoffs"][0].erase(0);
  CHECK(error_of([&] { game_from_json(short_row); }).rfind("payoffs[0]", 0) == 0);
  CHECK(error_of([] { game_from_json(Json::object()); }).find("actions") != std::string::npos);
}

TEST_CASE("monitoring and strategy round trip") {
  zdtest::Random rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = zdtest::random_space(rng, 1, 3, 1, 3);
    const auto m = zdtest::random_monitoring(rng, space, false);
    const auto m2 = monitoring_from_json(to_json(m), space);
    CHECK(m2.law() == m.law());
    CHECK(m2.signals() == m.signals());
    const auto st = zdtest::random_strategy(rng, 0, space, m, false);
    CHECK(strategy_from_json(to_json(st, m), space, m) == st);
  }
  const StateSpace space({2, 2});
  const auto perfect = monitoring_from_json(Json{{"perfect", true}}, space);
  CHECK(perfect.is_perfect());
  const Json rep{{"player", 2}, {"repeat", true}};
  CHECK(strategy_from_json(rep, space, perfect) == MemoryOneStrategy::repeat(1, 2, 4));
  const Json marg{{"player", 1}, {"marginal", {{1, 0}, {0, 1}, {1, 0}, {0, 1}}}};
  const auto tft = strategy_from_json(marg, space, perfect);
  CHECK(tft.probability(0, 1, 0) == 1);
  CHECK(tft.probability(1, 0, 1) == 1);

  const Json bad_law{{"signals", {"a"}}, {"law", {{1}, {1}, {"1/2"}, {1}}}};
  CHECK(error_of([&] { monitoring_from_json(bad_law, space); }).rfind("monitoring.law[2]", 0) == 0);
  const Json bad_player{{"player", 3}, {"repeat", true}};
  CHECK(error_of([&] { strategy_from_json(bad_player, space, perfect); }).rfind("strategy.player", 0) == 0);
  const Json bad_row{{"player", 1}, {"marginal", {{1, 0}, {0, 1}, {"1/2", "1/3"}, {0, 1}}}};
  CHECK(error_of([&] { strategy_from_json(bad_row, space, perfect); }).rfind("strategy.marginal[2]", 0) == 0);
}

TEST_CASE("certificate round trip") {
  const auto c = make_zero_sum_controller(1, {Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  const auto back = certificate_from_json(to_json(c.certificate));
  CHECK(back.player == c.certificate.player);
  CHECK(back.dimension == c.certificate.dimension);
  CHECK(back.relations == c.certificate.relations);
  CHECK(back.basis == c.certificate.basis);
  CHECK(back.witnesses == c.certificate.witnesses);
  CHECK(back.structural == c.certificate.structural);
}

TEST_CASE("file errors") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/zdlab.json"), Error);
  const auto path = std::filesystem::temp_directory_path() / "zdlab_io_test.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(error_of([&] { load_json_file(path); }).find(path.string()) != std::string::npos);
  std::filesystem::remove(path);
}
}
