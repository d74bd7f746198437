#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ivg/finite_game.hpp"
#include "ivg/imperfect_example.hpp"
#include "ivg/json_io.hpp"
#include "ivg/rule_search.hpp"
#include "test_support.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <random>

using namespace ivg;

namespace {

ImperfectParams params_with_p(double p) {
  ImperfectParams params;
  params.p = p;
  return params;
}

FiniteInterventionRule rule_rows(double pass_hi, double pass_lo) {
  Mat m(2, 2);
  m << pass_hi, 1.0 - pass_hi, pass_lo, 1.0 - pass_lo;
  return FiniteInterventionRule(m);
}

FiniteInterventionGame random_game(std::mt19937& rng) {
  Mat dist(4, 2);
  for (int a = 0; a < 4; ++a) {
    const double p = testing::uniform(rng, 0.05, 0.95);
    dist(a, 0) = p;
    dist(a, 1) = 1.0 - p;
  }
  std::vector<Vec> payoffs(3, Vec::Zero(16));
  for (int who = 0; who < 3; ++who) {
    for (int k = 0; k < 16; ++k) payoffs[who][k] = testing::uniform(rng, -2, 2);
  }
  return FiniteInterventionGame({{"a", "b"}, {"a", "b"}}, {"p", "i"},
                                {"hi", "lo"}, dist, payoffs);
}

}  // namespace

TEST_CASE("ex_ante_payoff on the gatekeeper game") {
  const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.9));

  SUBCASE("pass on high signal, intervene on low, at (low,low)") {
    CHECK(ex_ante_payoff(game, rule_rows(1.0, 0.0), std::vector<int>{0, 0}, 1) ==
          doctest::Approx(4.5).epsilon(1e-12));
  }
  SUBCASE("no intervention at (high,high)") {
    CHECK(ex_ante_payoff(game, no_intervention_rule(game), std::vector<int>{1, 1}, 1) ==
          doctest::Approx(4.284).epsilon(1e-12));
  }
  SUBCASE("full intervention zeroes every user payoff") {
    const FiniteInterventionRule always =
        FiniteInterventionRule::degenerate(2, 2, 1);
    for (int i = 0; i < 4; ++i) {
      CHECK(ex_ante_payoff(game, always, game.profile_from_flat(i), 1) == 0.0);
    }
  }
  SUBCASE("label overload matches indices and rejects unknowns") {
    CHECK(ex_ante_payoff(game, rule_rows(1.0, 0.0),
                         std::vector<std::string>{"low", "low"}, 1) ==
          doctest::Approx(4.5));
    CHECK_THROWS_AS(ex_ante_payoff(game, rule_rows(1.0, 0.0),
                                   std::vector<std::string>{"low", "huge"}, 1),
                    ValidationError);
  }
}

TEST_CASE("mixed_ex_ante_payoff") {
  const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.9));
  const FiniteInterventionRule tilde = no_intervention_rule(game);

  SUBCASE("degenerate profile equals the pure evaluation") {
    CHECK(mixed_ex_ante_payoff(game, tilde, MixedProfile::pure({2, 2}, {0, 0}), 1) ==
          doctest::Approx(ex_ante_payoff(game, tilde, std::vector<int>{0, 0}, 1)).epsilon(1e-12));
  }
  SUBCASE("uniform mixing averages the four pure values") {
    Vec half(2);
    half << 0.5, 0.5;
    MixedProfile uniform;
    uniform.per_user = {half, half};
    double sum = 0.0;
    for (int flat = 0; flat < 4; ++flat) {
      sum += ex_ante_payoff(game, tilde, game.profile_from_flat(flat), 1);
    }
    CHECK(mixed_ex_ante_payoff(game, tilde, uniform, 1) ==
          doctest::Approx(sum / 4.0).epsilon(1e-12));
  }
  SUBCASE("linear in one user's mixture") {
    Vec half(2);
    half << 0.5, 0.5;
    MixedProfile mixed;
    mixed.per_user = {Vec::Unit(2, 1), half};
    const double lo = ex_ante_payoff(game, tilde, std::vector<int>{1, 0}, 2);
    const double hi = ex_ante_payoff(game, tilde, std::vector<int>{1, 1}, 2);
    CHECK(mixed_ex_ante_payoff(game, tilde, mixed, 2) ==
          doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  }
}

TEST_CASE("induced_game reproduces the pass-through payoff matrix") {
  const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.9));
  const InducedGame induced = induced_game(game, no_intervention_rule(game));
  const double expect1[4] = {4.6, 4.2, 4.998, 4.284};
  const double expect2[4] = {4.6, 4.998, 4.2, 4.284};
  for (int flat = 0; flat < 4; ++flat) {
    CHECK(induced.users.payoff(0, flat) == doctest::Approx(expect1[flat]).epsilon(1e-12));
    CHECK(induced.users.payoff(1, flat) == doctest::Approx(expect2[flat]).epsilon(1e-12));
    CHECK(induced.manager[flat] ==
          doctest::Approx(0.5 * (expect1[flat] + expect2[flat])).epsilon(1e-12));
  }
}

TEST_CASE("induced_game entry under a partially passing rule") {
  const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.9));
  const InducedGame induced = induced_game(game, rule_rows(1.0, 0.0));
  CHECK(induced.users.payoff(0, 0) == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("single intervention action makes the induced game rule-independent") {
  Mat dist(4, 2);
  dist << 0.5, 0.5, 0.3, 0.7, 0.7, 0.3, 0.2, 0.8;
  std::vector<Vec> payoffs(3, Vec::Zero(8));
  std::mt19937 rng(3);
  for (int who = 0; who < 3; ++who) {
    for (int k = 0; k < 8; ++k) payoffs[who][k] = testing::uniform(rng, -1, 1);
  }
  const FiniteInterventionGame game({{"a", "b"}, {"a", "b"}}, {"only"},
                                    {"hi", "lo"}, dist, payoffs, "only");
  const FiniteInterventionRule unique = no_intervention_rule(game);
  const InducedGame induced = induced_game(game, unique);
  for (int flat = 0; flat < 4; ++flat) {
    CHECK(induced.users.payoff(0, flat) ==
          doctest::Approx(ex_ante_payoff(game, unique, game.profile_from_flat(flat), 1)));
  }
}

TEST_CASE("sustains") {
  SUBCASE("high usage is dominant under no intervention") {
    const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.9));
    CHECK(sustains(game, no_intervention_rule(game),
                   MixedProfile::pure({2, 2}, {1, 1})));
  }
  SUBCASE("the computed pass probability sustains (low,low) at p = 0.96") {
    const ImperfectParams params = params_with_p(0.96);
    const FiniteInterventionGame game = make_imperfect_game(params);
    const FiniteInterventionRule rule = attaining_rule(params, 1.0);
    CHECK(rule.prob(1, 0) == doctest::Approx(0.20202).epsilon(1e-4));
    CHECK(sustains(game, rule, MixedProfile::pure({2, 2}, {0, 0})));
  }
  SUBCASE("passing everything breaks the incentive") {
    const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.96));
    CHECK_FALSE(sustains(game, rule_rows(1.0, 1.0),
                         MixedProfile::pure({2, 2}, {0, 0})));
  }
  SUBCASE("monotone in tolerance") {
    const FiniteInterventionGame game = make_imperfect_game(params_with_p(0.96));
    const MixedProfile low = MixedProfile::pure({2, 2}, {0, 0});
    const FiniteInterventionRule loose = rule_rows(1.0, 1.0);
    CHECK_FALSE(sustains(game, loose, low, 1e-9));
    CHECK(sustains(game, loose, low, 100.0));
  }
}

TEST_CASE("ex_ante_payoff is linear in the rule") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const FiniteInterventionGame game = random_game(rng);
    Mat fa(2, 2), fb(2, 2);
    for (int s = 0; s < 2; ++s) {
      const double pa = testing::uniform(rng, 0, 1);
      const double pb = testing::uniform(rng, 0, 1);
      fa.row(s) << pa, 1 - pa;
      fb.row(s) << pb, 1 - pb;
    }
    const double lam = testing::uniform(rng, 0, 1);
    const FiniteInterventionRule mix(lam * fa + (1 - lam) * fb);
    const std::vector<int> profile = {trial % 2, (trial / 2) % 2};
    for (int who = 0; who < 3; ++who) {
      const double split =
          lam * ex_ante_payoff(game, FiniteInterventionRule(fa), profile, who) +
          (1 - lam) * ex_ante_payoff(game, FiniteInterventionRule(fb), profile, who);
      CHECK(ex_ante_payoff(game, mix, profile, who) ==
            doctest::Approx(split).epsilon(1e-10));
    }
  }
}

TEST_CASE("JSON round trip of the gatekeeper game") {
  const ImperfectParams params = params_with_p(0.96);
  const FiniteInterventionGame built = make_imperfect_game(params);
  const FiniteInterventionGame loaded =
      game_from_json(testing::imperfect_game_json(params));
  REQUIRE(loaded.num_users() == built.num_users());
  REQUIRE(loaded.num_signals() == built.num_signals());
  for (int flat = 0; flat < 4; ++flat) {
    for (int y = 0; y < 2; ++y) {
      CHECK(loaded.signal_prob(flat, y) == doctest::Approx(built.signal_prob(flat, y)));
      for (int a0 = 0; a0 < 2; ++a0) {
        for (int who = 0; who < 3; ++who) {
          CHECK(loaded.payoff(who, a0, flat, y) ==
                doctest::Approx(built.payoff(who, a0, flat, y)));
        }
      }
    }
  }
  CHECK(loaded.no_intervention_index() == built.no_intervention_index());
}

TEST_CASE("JSON parser names missing and malformed entries") {
  nlohmann::json doc = testing::imperfect_game_json(ImperfectParams{});

  SUBCASE("missing payoff entry") {
    doc["payoffs"].erase("pass,low,low,quality_high");
    CHECK_THROWS_WITH_AS(game_from_json(doc),
                         doctest::Contains("pass,low,low,quality_high"),
                         ValidationError);
  }
  SUBCASE("missing signal_dist entry") {
    doc["signal_dist"].erase("high,high");
    CHECK_THROWS_WITH_AS(game_from_json(doc), doctest::Contains("high,high"),
                         ValidationError);
  }
  SUBCASE("non-stochastic signal row") {
    doc["signal_dist"]["low,low"] = {0.7, 0.7};
    CHECK_THROWS_AS(game_from_json(doc), ValidationError);
  }
  SUBCASE("missing top-level key") {
    doc.erase("signals");
    CHECK_THROWS_WITH_AS(game_from_json(doc), doctest::Contains("signals"),
                         ValidationError);
  }
}
