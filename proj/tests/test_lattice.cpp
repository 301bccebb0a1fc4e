#include "doctest.h"
#include "srn/lattice.hpp"
#include "support.hpp"

#include <numeric>
#include <random>

using namespace srn;

namespace {

// g divides a when a = n g for an integer n.
bool divides(const IntVector& g, const IntVector& a) {
  std::optional<std::int64_t> n;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] == 0) {
      if (a[j] != 0) return false;
      continue;
    }
    if (a[j] % g[j] != 0) return false;
    const auto q = a[j] / g[j];
    if (n && *n != q) return false;
    n = q;
  }
  return n.has_value();
}

// Every nonzero integer vector bounded by the largest entry that divides all of A.
std::vector<IntVector> common_divisors(const std::vector<IntVector>& a) {
  std::int64_t bound = 0;
  for (const auto& v : a)
    for (auto x : v) bound = std::max(bound, std::abs(x));
  const std::size_t d = a.front().size();
  std::vector<IntVector> out;
  IntVector g(d, -bound);
  while (true) {
    if (std::any_of(g.begin(), g.end(), [](auto v) { return v != 0; }) &&
        std::all_of(a.begin(), a.end(), [&](const IntVector& v) { return divides(g, v); }))
      out.push_back(g);
    std::size_t j = 0;
    while (j < d && g[j] == bound) g[j++] = -bound;
    if (j == d) break;
    ++g[j];
  }
  return out;
}

std::vector<IntVector> minimal_oracle(const std::vector<IntVector>& b) {
  std::vector<IntVector> out;
  for (const auto& x : b) {
    bool minimal = true;
    for (const auto& y : b)
      if (y != x && dominates(x, y)) minimal = false;
    if (minimal && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("gcd of vector sets") {
  CHECK_FALSE(gcd_vector_set({{1, 2}, {2, 1}}).has_value());
  auto g = gcd_vector_set({{2, 4}, {4, 8}});
  REQUIRE(g);
  CHECK(g->vector == IntVector{2, 4});
  CHECK(g->scalar == 2);
  CHECK(g->step() == IntVector{1, 2});
  CHECK(g->support == std::vector<std::size_t>{0, 1});
  auto s = gcd_vector_set({{-3}});
  REQUIRE(s);
  CHECK(s->vector == IntVector{3});
  CHECK(s->multiple_of({-3}) == -1);
  CHECK_THROWS(s->multiple_of({2}));
  CHECK_THROWS_AS(gcd_vector_set({}), std::invalid_argument);
  CHECK_THROWS_AS(gcd_vector_set({{0, 0}}), std::invalid_argument);
}

TEST_CASE("gcd agrees with a brute-force divisor search") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 3), coef(-3, 3), mult(-3, 3), size(1, 3);
  int done = 0;
  while (done < 150) {
    const int d = dim(rng);
    IntVector p(d);
    for (auto& v : p) v = coef(rng);
    if (std::all_of(p.begin(), p.end(), [](auto v) { return v == 0; })) continue;
    std::vector<IntVector> a;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) {
      int n = mult(rng);
      if (n == 0) n = 1;
      IntVector v(p);
      for (auto& x : v) x *= n;
      a.push_back(v);
    }
    auto g = gcd_vector_set(a);
    REQUIRE(g);
    ++done;
    for (const auto& v : a) CHECK(divides(g->vector, v));
    for (const auto& c : common_divisors(a)) CHECK(divides(c, g->vector));
    const auto first = std::find_if(g->vector.begin(), g->vector.end(), [](auto v) { return v != 0; });
    CHECK(*first > 0);
  }
}

TEST_CASE("minimal sets and upward closures") {
  CHECK(minimal_set({{1, 0}, {0, 1}, {1, 1}}) == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(minimal_set({{2, 3}}) == std::vector<IntVector>{{2, 3}});
  CHECK(minimal_set({{1, 1}, {2, 2}, {3, 3}}) == std::vector<IntVector>{{1, 1}});
  CHECK(upward_contains({{1, 2}}, {2, 2}));
  CHECK_FALSE(upward_contains({{1, 2}}, {0, 5}));
  CHECK_FALSE(upward_contains({}, {0, 0}));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(0, 4), size(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IntVector> b;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) b.push_back({coef(rng), coef(rng)});
    auto mins = minimal_set(b);
    auto oracle = minimal_oracle(b);
    std::sort(mins.begin(), mins.end());
    std::sort(oracle.begin(), oracle.end());
    CHECK(mins == oracle);
    for (std::int64_t x = 0; x <= 5; ++x)
      for (std::int64_t y = 0; y <= 5; ++y) CHECK(upward_contains(mins, {x, y}) == upward_contains(b, {x, y}));
  }
}

TEST_CASE("span dimension") {
  CHECK(span_dimension({{1, -1}, {-2, 2}}) == 1);
  CHECK(span_dimension({{0, -2}, {-2, 2}, {2, 0}}) == 2);
  CHECK(span_dimension({}) == 0);
}

TEST_CASE("integer lattice membership") {
  IntegerLattice lat(std::vector<IntVector>{{2}});
  CHECK(lat.contains({4}));
  CHECK_FALSE(lat.contains({1}));
  IntegerLattice two(std::vector<IntVector>{{0, -2}, {-2, 2}, {2, 0}});
  CHECK(two.rank() == 2);
  CHECK(two.contains({2, 2}));
  CHECK_FALSE(two.contains({1, 0}));
  CHECK_FALSE(two.contains({0, 1}));
}

TEST_CASE("positive linear independence with certificates") {
  auto check_certificate = [](const std::vector<IntVector>& omegas, const PositiveIndependence& p) {
    const std::size_t d = omegas.front().size();
    if (p.independent) {
      REQUIRE(p.separator.size() == d);
      for (const auto& w : omegas) {
        Integer dot = 0;
        for (std::size_t j = 0; j < d; ++j) dot += p.separator[j] * w[j];
        CHECK(dot > 0);
      }
      CHECK(p.witness.empty());
    } else {
      REQUIRE(p.witness.size() == omegas.size());
      std::vector<Integer> sum(d, 0);
      Integer total = 0;
      for (std::size_t i = 0; i < omegas.size(); ++i) {
        CHECK(p.witness[i] >= 0);
        total += p.witness[i];
        for (std::size_t j = 0; j < d; ++j) sum[j] += p.witness[i] * omegas[i][j];
      }
      CHECK(total > 0);
      for (const auto& s : sum) CHECK(s == 0);
      CHECK(p.separator.empty());
    }
  };
  std::vector<IntVector> dep{{-1, -1}, {2, 1}, {1, 2}};
  auto pd = positively_linearly_independent(dep);
  CHECK_FALSE(pd.independent);
  check_certificate(dep, pd);
  CHECK(pd.witness == std::vector<Integer>{3, 1, 1});
  std::vector<IntVector> ind{{-1, -3}, {2, 1}, {1, 2}};
  auto pi = positively_linearly_independent(ind);
  CHECK(pi.independent);
  check_certificate(ind, pi);
  auto one = positively_linearly_independent({{1}});
  CHECK(one.independent);
  CHECK(one.separator == std::vector<Integer>{1});

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coef(-2, 2), size(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntVector> omegas;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) {
      IntVector w{coef(rng), coef(rng), coef(rng)};
      if (std::all_of(w.begin(), w.end(), [](auto v) { return v == 0; })) continue;
      omegas.push_back(w);
    }
    if (omegas.empty()) continue;
    check_certificate(omegas, positively_linearly_independent(omegas));
  }
}

TEST_CASE("conservativity") {
  CHECK(is_conservative(srn::test::load("conservative.srn")));
  CHECK_FALSE(is_conservative(srn::test::load("two_cores.srn")));
  CHECK_FALSE(is_conservative(parse("0 -> S1 + S2 @ 1\n3 S1 + 3 S2 -> S1 + S2 @ 1")));
  auto law = conservation_law({{1, -1}}, 2);
  REQUIRE(law);
  CHECK((*law)[0] == (*law)[1]);
  CHECK(is_conservative(srn::test::load("ecoli.srn")));
}

TEST_CASE("one-dimensional conservativity agrees with the sign test") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> coef(-3, 3), mult(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    IntVector p{coef(rng), coef(rng), coef(rng)};
    if (std::all_of(p.begin(), p.end(), [](auto v) { return v == 0; })) continue;
    std::vector<IntVector> omegas{p};
    IntVector q(p);
    const int k = mult(rng);
    for (auto& v : q) v *= -k;
    omegas.push_back(q);
    auto g = gcd_vector_set(omegas);
    REQUIRE(g);
    const bool has_negative = std::any_of(g->vector.begin(), g->vector.end(), [](auto v) { return v < 0; });
    CHECK(conservation_law(omegas, 3).has_value() == has_negative);
  }
}

TEST_CASE("rational cone membership") {
  std::vector<Rational> sep;
  CHECK(in_rational_cone({{1}, {2}}, {3}));
  CHECK_FALSE(in_rational_cone({{1}, {2}}, {-1}, &sep));
  REQUIRE(sep.size() == 1);
  CHECK(sep[0] * -1 < 0);
  CHECK(in_rational_cone({{1, 0}, {0, 1}}, {2, 3}));
  CHECK_FALSE(in_rational_cone({{1, 0}, {0, 1}}, {2, -3}));
  CHECK(in_rational_cone({{1}, {-1}}, {-5}));
}
