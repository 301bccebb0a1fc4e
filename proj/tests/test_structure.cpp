#include "doctest.h"
#include "srn/structure.hpp"
#include "support.hpp"

#include <random>

using namespace srn;

namespace {

ReactionNetwork random_network(std::mt19937& rng, std::size_t d, int max_reactions = 4) {
  std::uniform_int_distribution<int> coef(0, 2), count(1, max_reactions);
  std::vector<std::string> species;
  for (std::size_t j = 0; j < d; ++j) species.push_back("X" + std::to_string(j));
  std::vector<Reaction> rs;
  const int m = count(rng);
  while (static_cast<int>(rs.size()) < m) {
    Complex y(d), yp(d);
    for (auto& v : y) v = coef(rng);
    for (auto& v : yp) v = coef(rng);
    if (y != yp) rs.push_back({y, yp, 1});
  }
  return ReactionNetwork(species, rs);
}

// Trapping states by definition: a product can land there but no reaction fires.
bool trapping_oracle(const ReactionNetwork& n, const State& x) {
  bool fires = false, landed = false;
  for (const auto& r : n.reactions()) {
    fires = fires || dominates(x, r.reactant);
    landed = landed || dominates(x, r.product);
  }
  return landed && !fires;
}

std::vector<std::size_t> all_reactions(const ReactionNetwork& n) {
  std::vector<std::size_t> v(n.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("trap set emptiness and finiteness") {
  auto rev = parse("S <-> 2 S @ 1, 1");
  CHECK(trap_set_empty(rev));
  CHECK(trap_set_finite(rev));
  auto death = parse("2 S -> S @ 1\nS -> 0 @ 1");
  CHECK_FALSE(trap_set_empty(death));
  CHECK(trap_set_finite(death));
  auto ecoli = srn::test::load("ecoli.srn");
  CHECK_FALSE(trap_set_empty(ecoli));
  CHECK_FALSE(trap_set_finite(ecoli));
}

TEST_CASE("trap set theorem agrees with a window oracle") {
  // With complexes bounded by 2, membership in any upward closure depends on
  // min(x_j, 2), so T is empty iff it misses [0,2]^d and infinite iff it meets
  // a state of [0,3]^d with a coordinate equal to 3.
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto n = random_network(rng, 3);
    bool any = false, unbounded = false;
    const Window w = Window::cube(3, 3);
    for (std::size_t v = 0; v < w.size(); ++v) {
      const State x = w.state(v);
      if (!trapping_oracle(n, x)) continue;
      const bool edge = std::any_of(x.begin(), x.end(), [](auto c) { return c == 3; });
      if (!edge) any = true;
      unbounded = unbounded || edge;
      any = any || edge;
    }
    CHECK(trap_set_empty(n) == !any);
    CHECK(trap_set_finite(n) == !unbounded);
  }
}

TEST_CASE("return checks") {
  auto cycle = srn::test::load("three_cycle.srn", {{"k1", 1}, {"k2", 1}, {"k3", 1}});
  for (const auto& r : omega_o(cycle)) CHECK(r.value == Tri::Yes);

  auto ecoli = srn::test::load("ecoli.srn");
  const IntVector w3{1, 0, -1, 1, 0};
  for (const auto& r : omega_o(ecoli)) {
    CAPTURE(to_string(r.omega));
    CHECK(r.value == (r.omega == w3 ? Tri::No : Tri::Yes));
    for (const auto& [x, path] : r.returns) {
      State from(x), end;
      for (std::size_t j = 0; j < x.size(); ++j) from[j] += r.omega[j];
      CHECK(replay(ecoli, from, path, &end));
      CHECK(end == x);
    }
  }

  auto inflow = srn::test::load("inflow.srn");
  auto ri = omega_o(inflow);
  REQUIRE(ri.size() == 1);
  CHECK(ri[0].value == Tri::No);
}

TEST_CASE("classification of the enzyme network") {
  auto ecoli = srn::test::load("ecoli.srn");
  auto rep = classify(ecoli);
  CHECK(rep.essential == Tri::No);
  CHECK(rep.extinction.value == Tri::Yes);
  const Window w = Window::cube(5, 3);
  for (std::size_t v = 0; v < w.size(); ++v) {
    const State x = w.state(v);
    const bool n_closed = x[0] * x[1] == 0 && x[2] == 0 && x[4] == 0 && x[0] * x[3] == 0;
    const bool t_closed = x[1] == 0 && x[2] == 0 && x[4] == 0 && x[0] * x[3] > 0;
    CHECK(rep.in_N(x) == n_closed);
    CHECK(rep.in_T(x) == t_closed);
  }
}

TEST_CASE("classification of small networks") {
  auto inflow = classify(srn::test::load("inflow.srn"));
  for (std::int64_t x = 0; x < 20; ++x) {
    CHECK_FALSE(inflow.in_N({x}));
    CHECK_FALSE(inflow.in_T({x}));
    CHECK(inflow.in_E({x}) == Tri::Yes);
    CHECK(inflow.in_PQ({x}) == Tri::No);
  }
  CHECK(inflow.positively_independent);
  CHECK(inflow.n_expr == "all \\ (up{(1)} | up{(0)})");
  CHECK(inflow.t_expr == "up{(1)} \\ up{(0)}");

  auto cycle = classify(srn::test::load("three_cycle.srn", {{"k1", 1}, {"k2", 1}, {"k3", 1}}));
  CHECK(cycle.essential == Tri::Yes);
  CHECK(cycle.in_N({0}));
  for (std::int64_t x = 1; x < 20; ++x) CHECK(cycle.in_PQ({x}) == Tri::Yes);
  CHECK_FALSE(cycle.positively_independent);
  // The positive class is infinite, so no finite search can close it.
  CHECK(cycle.extinction.value == Tri::Unknown);
}

TEST_CASE("classification partitions states and agrees with the window oracle") {
  std::mt19937 rng(41);
  int compared = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto n = random_network(rng, 2);
    StructureOptions opt;
    opt.budget = 20000;
    opt.radius = 30;
    opt.sample_bound = 3;
    auto rep = classify(n, opt);
    auto dec = decompose_window(n, Window::cube(2, 12));
    for (std::size_t v = 0; v < dec.label.size(); ++v) {
      const State x = dec.window.state(v);
      const bool in_n = rep.in_N(x), in_t = rep.in_T(x);
      const Tri pq = rep.in_PQ(x), e = rep.in_E(x);
      CHECK(!(in_n && in_t));
      if (pq != Tri::Unknown)
        CHECK(int(in_n) + int(in_t) + int(pq == Tri::Yes) + int(e == Tri::Yes) == 1);
      switch (dec.label[v]) {
        case StateLabel::Neutral:
          CHECK(in_n);
          break;
        case StateLabel::Trapping:
          CHECK(in_t);
          break;
        case StateLabel::Escaping:
          CHECK(e != Tri::No);
          CHECK(pq != Tri::Yes);
          ++compared;
          break;
        case StateLabel::PIC:
        case StateLabel::QIC:
          CHECK(pq != Tri::No);
          ++compared;
          break;
        default:
          break;
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("core network checks with replayable certificates") {
  auto ecoli = srn::test::load("ecoli.srn");
  auto core = is_core_network(ecoli, {0, 1, 2, 3, 5});
  CHECK(core.value == Tri::Yes);
  REQUIRE(core.realizations.size() == 1);
  const auto& real = core.realizations[0];
  CHECK(real.reaction == 4);
  CHECK(real.path == std::vector<std::size_t>{5, 2, 0});
  State end;
  CHECK(replay(ecoli, ecoli[4].reactant, real.path, &end));
  CHECK(end == ecoli[4].product);

  auto two = srn::test::load("two_cores.srn");
  CHECK(is_core_network(two, {0, 1}).value == Tri::Yes);
  CHECK(is_core_network(two, {1}).value == Tri::No);
  CHECK(is_core_network(two, all_reactions(two)).value == Tri::Yes);
  CHECK(is_core_network(two, all_reactions(two)).realizations.empty());
  CHECK_THROWS_AS(is_core_network(two, {7}), std::invalid_argument);
}

TEST_CASE("minimal core networks") {
  auto two = minimal_core_networks(srn::test::load("two_cores.srn"));
  CHECK(two.complete);
  CHECK(two.cores == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}});
  auto ecoli = minimal_core_networks(srn::test::load("ecoli.srn"));
  CHECK(ecoli.complete);
  CHECK(ecoli.cores == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3, 5}});
  auto co = minimal_core_networks(srn::test::load("coexistence.srn"));
  CHECK(co.cores == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  auto cycle = minimal_core_networks(srn::test::load("three_cycle.srn", {{"k1", 1}, {"k2", 1}, {"k3", 1}}));
  CHECK(cycle.cores == std::vector<std::vector<std::size_t>>{{0, 2}});
  auto a = minimal_core_networks(srn::test::load("explosive_a.srn"));
  CHECK(a.cores == std::vector<std::vector<std::size_t>>{{0, 1}});

  std::vector<Reaction> many;
  for (int i = 1; i <= 17; ++i) many.push_back({{0}, {i}, 1});
  CHECK_THROWS_AS(minimal_core_networks(ReactionNetwork({"S"}, many)), std::invalid_argument);
}

TEST_CASE("cores are closed under union and preserve reachability") {
  std::mt19937 rng(53);
  StructureOptions opt;
  opt.budget = 20000;
  opt.radius = 20;
  std::uniform_int_distribution<int> coord(0, 4);
  for (int trial = 0; trial < 25; ++trial) {
    auto n = random_network(rng, 2, 5);
    const std::size_t m = n.size();
    std::vector<Tri> verdict(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < verdict.size(); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t k = 0; k < m; ++k)
        if (mask >> k & 1) sub.push_back(k);
      verdict[mask] = is_core_network(n, sub, opt).value;
    }
    CHECK(verdict.back() == Tri::Yes);
    for (std::size_t a = 0; a < verdict.size(); ++a)
      for (std::size_t b = 0; b < verdict.size(); ++b)
        if (verdict[a] == Tri::Yes && verdict[b] == Tri::Yes) CHECK(verdict[a | b] == Tri::Yes);
    auto cores = minimal_core_networks(n, opt);
    for (const auto& core : cores.cores) {
      std::size_t mask = 0;
      for (auto k : core) mask |= std::size_t{1} << k;
      CHECK(verdict[mask] == Tri::Yes);
      const auto sub = n.subnetwork(core);
      for (int q = 0; q < 10; ++q) {
        State x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)};
        ReachOptions ro{20000, Window::cube(2, 25)};
        const Tri full = reachable(n, x, y, ro).value;
        const Tri part = reachable(sub, x, y, ro).value;
        if (full != Tri::Unknown && part != Tri::Unknown) CHECK(full == part);
        if (full == Tri::No) CHECK(part != Tri::Yes);
      }
    }
  }
}
