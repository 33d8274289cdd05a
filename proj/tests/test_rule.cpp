#include <catch_amalgamated.hpp>

#include "hforge/rule.hpp"

using namespace hforge;

namespace {
Formula P(const char* s) { return parse_formula(s, ParseOptions{true}); }
}  // namespace

TEST_CASE("rule text round trip", "[rule]") {
  Rule a = parse_rule("adj: p , q |- p & q");
  CHECK(a.name == "adj");
  CHECK(a.premises.size() == 2);
  CHECK_FALSE(a.bidirectional);
  CHECK(parse_rule(print_rule(a)).conclusion == a.conclusion);

  Rule b = parse_rule("dm: ~(p | q) -||- ~p & ~q   -- N2");
  CHECK(b.bidirectional);
  CHECK(b.premises.front() == P("~(p | q)"));
  CHECK(print_rule(parse_rule(print_rule(b))) == print_rule(b));

  Rule ax = parse_rule("top: |- 1");
  CHECK(ax.premises.empty());
  CHECK(ax.conclusion == Formula::top());
}

TEST_CASE("malformed rules are rejected", "[rule]") {
  CHECK_THROWS(parse_rule("p |- q"));
  CHECK_THROWS(parse_rule("x: p , q -||- r"));
  CHECK_THROWS(parse_rule("x: p"));
  CHECK_THROWS(parse_rule("x: #q |- p"));
}

TEST_CASE("directions of a bidirectional rule", "[rule]") {
  auto ds = directions(parse_rule("n: ~~p -||- p"));
  REQUIRE(ds.size() == 2);
  CHECK_FALSE(ds[0].backward);
  CHECK(ds[1].backward);
  CHECK(ds[1].premises.front() == P("p"));
  CHECK(ds[1].conclusion == P("~~p"));
  CHECK(rule_vars(ds[0]) == std::set<std::string>{"p"});
}

TEST_CASE("dedup up to renaming, premise order and direction", "[rule]") {
  RuleSet rs;
  CHECK(rs.add(parse_rule("a: p & q -||- q & p")));
  CHECK_FALSE(rs.add(parse_rule("b: r & s |- s & r")));
  CHECK(rs.add(parse_rule("c: p , q |- p & q")));
  CHECK_FALSE(rs.add(parse_rule("d: q , p |- p & q")));
  CHECK_FALSE(rs.add(parse_rule("e: x , y |- y & x")));
  CHECK(rs.size() == 2);

  RuleSet halves;
  CHECK(halves.add(parse_rule("f: ~~p |- p")));
  CHECK(halves.add(parse_rule("g: p |- ~~p")));
  CHECK_FALSE(halves.add(parse_rule("h: ~~q -||- q")));

  CHECK(canonical_key({P("p & q")}, P("q")) == canonical_key({P("u & v")}, P("v")));
  CHECK(canonical_key({P("p & q")}, P("q")) != canonical_key({P("p & q")}, P("p & p")));
}

TEST_CASE("covers and find", "[rule]") {
  RuleSet rs = parse_rules("a: p -||- p | 0\nb: p , q |- p & q\n-- comment only\n");
  REQUIRE(rs.size() == 2);
  CHECK(rs.covers({P("q | 0")}, P("q")));
  CHECK(rs.covers({P("r"), P("s")}, P("r & s")));
  CHECK_FALSE(rs.covers({P("r")}, P("r & r")));
  REQUIRE(rs.find("b") != nullptr);
  CHECK(rs.find("zz") == nullptr);
}

TEST_CASE("equation files", "[rule]") {
  auto eqs = parse_equations("comm: x | y = y | x\n~0 = 1 -- N1\n\n");
  REQUIRE(eqs.size() == 2);
  CHECK(eqs[0].label == "comm");
  CHECK(eqs[1].lhs == P("~0"));
  CHECK(parse_equations(print_equation(eqs[0]))[0].rhs == eqs[0].rhs);
  CHECK_THROWS(parse_equations("x | y\n"));
}

TEST_CASE("provenance strings round trip", "[rule]") {
  for (const char* s : {"user", "equation", "closure:2", "g:1", "s:3", "builtin:R_F", "aux:S_bullet"})
    CHECK(Provenance::parse(s).str() == s);
}
