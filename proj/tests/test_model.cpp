#include "doctest.h"
#include "srn/model.hpp"
#include "srn/parser.hpp"
#include "support.hpp"

#include <random>

using namespace srn;
using srn::test::Q;

TEST_CASE("propensity is a falling factorial times the rate") {
  const Reaction r{{2}, {1}, 2};
  CHECK(propensity(r, {3}) == 12);
  CHECK(propensity(r, {1}) == 0);
  const Reaction r2{{1, 2}, {0, 0}, 1};
  CHECK(propensity(r2, {2, 3}) == 12);
  CHECK(propensity(Reaction{{0}, {1}, Q("1/3")}, {0}) == Q("1/3"));
}

TEST_CASE("propensity is positive exactly when the reactant fits") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Complex y{coef(rng), coef(rng)};
    Reaction r{y, {y[0] + 1, y[1]}, Q("5/2")};
    for (std::int64_t a = 0; a <= 5; ++a)
      for (std::int64_t b = 0; b <= 5; ++b) CHECK((propensity(r, {a, b}) > 0) == dominates({a, b}, y));
  }
}

TEST_CASE("validation reports self loops, orphan species and bad rates") {
  CHECK(validate(ReactionNetwork({"S"}, {{{1}, {2}, 1}})).ok());
  auto self = validate(ReactionNetwork({"S"}, {{{1}, {1}, 1}}));
  REQUIRE(self.violations.size() == 1);
  CHECK(self.violations[0].kind == Violation::Kind::SelfLoop);
  auto orphan = validate(ReactionNetwork({"S1", "S2"}, {{{1, 0}, {2, 0}, 1}}));
  REQUIRE(orphan.violations.size() == 1);
  CHECK(orphan.violations[0].kind == Violation::Kind::OrphanSpecies);
  CHECK(orphan.violations[0].index == 1);
  auto rate = validate(ReactionNetwork({"S"}, {{{1}, {2}, 0}}));
  REQUIRE(rate.violations.size() == 1);
  CHECK(rate.violations[0].kind == Violation::Kind::NonPositiveRate);
  CHECK_THROWS_AS(require_valid(ReactionNetwork({"S"}, {{{1}, {1}, 1}})), std::invalid_argument);
}

TEST_CASE("construction rejects malformed complexes") {
  CHECK_THROWS_AS(ReactionNetwork({"S"}, {{{1, 0}, {2}, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ReactionNetwork({"S"}, {{{-1}, {2}, 1}}), std::invalid_argument);
}

TEST_CASE("duplicate reactions are merged and total propensity is preserved") {
  ReactionNetwork n({"S"}, {{{1}, {2}, 1}, {{2}, {1}, 3}, {{1}, {2}, Q("1/2")}});
  REQUIRE(n.size() == 2);
  CHECK(n[0].rate == Q("3/2"));
  CHECK(n[1].rate == 3);
  for (std::int64_t x = 0; x < 10; ++x) {
    Rational merged = propensity(n[0], {x});
    Rational split = propensity({{1}, {2}, 1}, {x}) + propensity({{1}, {2}, Q("1/2")}, {x});
    CHECK(merged == split);
  }
}

TEST_CASE("jump structure of small networks") {
  auto two = srn::test::load("two_cores.srn");
  auto js = jump_structure(two);
  REQUIRE(js.omegas.size() == 3);
  CHECK(js.omegas[0] == IntVector{1});
  CHECK(js.omegas[1] == IntVector{-1});
  CHECK(js.omegas[2] == IntVector{2});
  CHECK(js.inputs == std::vector<Complex>{{1}});

  auto co = srn::test::load("coexistence.srn");
  auto jc = jump_structure(co);
  CHECK(jc.omegas == std::vector<IntVector>{{0, -2}, {-2, 2}, {2, 0}});

  auto inflow = srn::test::load("inflow.srn");
  auto ji = jump_structure(inflow);
  CHECK(ji.omegas == std::vector<IntVector>{{1}});
  CHECK(ji.inputs_of[0] == std::vector<Complex>{{0}});
  CHECK(ji.omega_index({1}) == 0u);
  CHECK_FALSE(ji.omega_index({2}).has_value());
}

TEST_CASE("minimal inputs per jump form an antichain covering every reactant") {
  auto ecoli = srn::test::load("ecoli.srn");
  auto js = jump_structure(ecoli);
  for (std::size_t k = 0; k < js.omegas.size(); ++k) {
    const auto& mins = js.inputs_of[k];
    for (std::size_t a = 0; a < mins.size(); ++a)
      for (std::size_t b = 0; b < mins.size(); ++b)
        if (a != b) CHECK_FALSE(dominates(mins[a], mins[b]));
    for (auto i : js.reactions_of[k]) {
      bool covered = false;
      for (const auto& m : mins) covered = covered || dominates(ecoli[i].reactant, m);
      CHECK(covered);
    }
    for (std::size_t a = 0; a < mins.size(); ++a) {
      IntVector o(mins[a]);
      for (std::size_t j = 0; j < o.size(); ++j) o[j] += js.omegas[k][j];
      CHECK(js.outputs_of[k][a] == o);
    }
  }
}

TEST_CASE("weak reversibility") {
  CHECK(is_weakly_reversible(srn::test::load("three_cycle.srn", {{"k1", 1}, {"k2", 1}, {"k3", 1}})));
  CHECK_FALSE(is_weakly_reversible(srn::test::load("two_cores.srn")));
  CHECK_FALSE(is_weakly_reversible(srn::test::load("inflow.srn")));
  CHECK(is_weakly_reversible(srn::test::load("immigration_death.srn", {{"l", 1}, {"m", 1}})));
}
