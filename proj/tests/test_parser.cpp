#include "doctest.h"
#include "srn/parser.hpp"
#include "support.hpp"

#include <random>

using namespace srn;
using srn::test::Q;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  throw std::logic_error("unreachable");
}

// The span must cover part of the line it points at.
void check_span_inside(const std::string& text, const ParseError& e) {
  std::size_t line_start = 0;
  for (std::size_t l = 1; l < e.span().line; ++l) line_start = text.find('\n', line_start) + 1;
  const std::size_t line_end = std::min(text.find('\n', line_start), text.size());
  CHECK(e.span().column >= 1);
  CHECK(line_start + e.span().column - 1 <= line_end);
  CHECK(!e.message().empty());
}

}  // namespace

TEST_CASE("basic reactions and implicit species") {
  auto n = parse("S -> 2 S @ 1\n3 S -> S @ 1");
  CHECK(n.dimension() == 1);
  CHECK(n.size() == 2);
  CHECK(n[1].reactant == Complex{3});
}

TEST_CASE("reversible arrows take forward and backward rates") {
  auto n = parse("0 <-> S @ 1, 2");
  REQUIRE(n.size() == 2);
  CHECK(n[0].reactant == Complex{0});
  CHECK(n[0].product == Complex{1});
  CHECK(n[0].rate == 1);
  CHECK(n[1].reactant == Complex{1});
  CHECK(n[1].rate == 2);
}

TEST_CASE("enzyme fragment") {
  auto n = parse("E + Ip <-> EIp @ 1, 1\nEIp -> E + I @ 1");
  CHECK(n.species() == std::vector<std::string>{"E", "Ip", "EIp", "I"});
  CHECK(n.size() == 3);
  CHECK(n[2].product == Complex{1, 0, 0, 1});
}

TEST_CASE("lexical details") {
  auto n = parse("# header comment\r\n\r\n  2S1+S2->  3 S1 @ 0.25 # trailing\r\n");
  CHECK(n.species() == std::vector<std::string>{"S1", "S2"});
  CHECK(n[0].reactant == Complex{2, 1});
  CHECK(n[0].rate == Q("1/4"));
  auto summed = parse("S + S -> 0 @ 3/6");
  CHECK(summed[0].reactant == Complex{2});
  CHECK(summed[0].rate == Q("1/2"));
}

TEST_CASE("species header fixes order and enables the unknown-species check") {
  auto n = parse("species: B, A\nA -> B @ 1");
  CHECK(n.species() == std::vector<std::string>{"B", "A"});
  CHECK(n[0].reactant == Complex{0, 1});
  auto e = parse_error("species: A\nA -> B @ 1");
  CHECK(e.kind() == ParseErrorKind::UnknownSpecies);
  CHECK(e.span().line == 2);
  CHECK(e.span().column == 6);
}

TEST_CASE("errors carry a kind and a span inside the offending token") {
  struct Case {
    std::string text;
    ParseErrorKind kind;
    std::size_t line, column;
  };
  const std::vector<Case> cases{
      {"S -> 2 S", ParseErrorKind::Syntax, 1, 9},
      {"S -> 2 S @ -1", ParseErrorKind::BadRate, 1, 12},
      {"S -> 2 S @ 0", ParseErrorKind::BadRate, 1, 12},
      {"S -> 2 S @ 1, 2", ParseErrorKind::BadRate, 1, 15},
      {"S <-> 2 S @ 1", ParseErrorKind::BadRate, 1, 13},
      {"S -> S @ 1", ParseErrorKind::SelfLoop, 1, 1},
      {"S -> 2 S @ 1\n0 S -> S @ 1", ParseErrorKind::Syntax, 2, 1},
      {"S => 2 S @ 1", ParseErrorKind::Syntax, 1, 3},
      {"S -> 2 S @ 1\nS -> $ @ 1", ParseErrorKind::Syntax, 2, 6},
      {"1.5 S -> S @ 1", ParseErrorKind::Syntax, 1, 1},
      {"S -> 2 S @ 1 2", ParseErrorKind::Syntax, 1, 14},
      {"A + -> B @ 1", ParseErrorKind::Syntax, 1, 5},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    auto e = parse_error(c.text);
    CHECK(e.kind() == c.kind);
    CHECK(e.span().line == c.line);
    CHECK(e.span().column == c.column);
    check_span_inside(c.text, e);
  }
}

TEST_CASE("an empty file has no reactions") {
  auto e = parse_error("");
  CHECK(e.message() == "no reactions");
  CHECK(parse_error("# only a comment\n\n").message() == "no reactions");
}

TEST_CASE("symbolic rates are bound later") {
  auto src = parse_source("0 <-> S @ 1, k\nS -> 2 S @ k");
  CHECK(src.parameters() == std::vector<std::string>{"k"});
  auto n = bind(src, {{"k", Q("3/2")}});
  CHECK(n[1].rate == Q("3/2"));
  CHECK(n[2].rate == Q("3/2"));
  try {
    bind(src, {});
    FAIL("unbound parameter accepted");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::BadRate);
    CHECK(e.span().column == 14);
  }
  CHECK_THROWS_AS(bind(src, {{"k", 0}}), ParseError);
}

TEST_CASE("serialization format") {
  CHECK(serialize(ReactionNetwork({"S"}, {{{1}, {2}, Q("1/2")}})) == "S -> 2 S @ 1/2\n");
  CHECK(serialize(ReactionNetwork({"S"}, {{{1}, {0}, 1}})) == "S -> 0 @ 1\n");
  auto reordered = ReactionNetwork({"B", "A"}, {{{0, 1}, {1, 0}, 1}});
  CHECK(serialize(reordered) == "species: B, A\nA -> B @ 1\n");
  CHECK(parse(serialize(reordered)) == reordered);
}

TEST_CASE("round trip on the enzyme network and all shipped files") {
  auto ecoli = srn::test::load("ecoli.srn");
  CHECK(parse(serialize(ecoli)) == ecoli);
  for (const char* name : {"explosive_a.srn", "conservative.srn", "coexistence.srn", "inflow.srn"}) {
    auto n = srn::test::load(name);
    CHECK(parse(serialize(n)) == n);
  }
}

TEST_CASE("round trip on generated networks") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 4), count(1, 8), coef(0, 3), num(1, 20);
  int built = 0;
  while (built < 300) {
    const int d = dim(rng);
    std::vector<std::string> species;
    for (int j = 0; j < d; ++j) species.push_back("X" + std::to_string(j));
    std::vector<Reaction> rs;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
      Complex y(d), yp(d);
      for (auto& v : y) v = coef(rng);
      for (auto& v : yp) v = coef(rng);
      if (y == yp) continue;
      rs.push_back({y, yp, Rational(num(rng), num(rng))});
    }
    if (rs.empty()) continue;
    ReactionNetwork n(species, rs);
    if (!validate(n).ok()) continue;
    ++built;
    CHECK(parse(serialize(n)) == n);
  }
}
