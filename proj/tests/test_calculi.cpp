#include <catch_amalgamated.hpp>

#include "hforge/calculi.hpp"
#include "hforge/transform.hpp"

using namespace hforge;

namespace {
Formula P(const char* s) { return parse_formula(s, ParseOptions{true}); }
Rule R(const char* s) { return parse_rule(s, ParseOptions{true}); }
}  // namespace

TEST_CASE("preset sizes", "[calculi]") {
  CHECK(preset("DN").equations.size() == 13);
  CHECK(preset("SDM").equations.size() == 16);
  CHECK(preset("DM").equations.size() == 17);
  CHECK(preset("PL").equations.size() == 17);
  CHECK(preset("O").equations.size() == 15);
  CHECK(preset("Berman(1,0)").equations.size() == 16);
  CHECK(preset("Berman:2:1").equations.size() == 16);
  auto ber = preset("Berman(1,0)").equations.back();
  CHECK(ber.lhs == P("~~x"));
  CHECK(ber.rhs == P("x"));
  CHECK_THROWS(preset("Berman(0,1)"));
  CHECK_THROWS(preset("XYZ"));
}

TEST_CASE("rules from equations", "[calculi]") {
  RuleSet rs = rules_from_equations({Equation{"c", P("x | y"), P("y | x")}});
  REQUIRE(rs.size() == 1);
  CHECK(rs.covers({P("p | q")}, P("q | p")));
  CHECK(rules_from_equations({Equation{"n", P("~0"), P("1")}}).covers({P("1")}, P("~0")));
  RuleSet dn = rules_from_equations(preset("DN").equations);
  CHECK(dn.size() == 13);
  for (const auto& r : builtin(Builtin::RC))
    for (const auto& d : directions(r)) CHECK(dn.covers(d.premises, d.conclusion));
}

TEST_CASE("closure layers", "[calculi]") {
  RuleSet one;
  one.add(R("r: p |- q"));
  RuleSet l1 = closure_layer(one, 1);
  CHECK(l1.covers({P("~q")}, P("~p")));
  CHECK(l1.covers({P("p | #q0")}, P("q | #q0")));
  CHECK(l1.size() <= 3);

  // Layering R^DN never collides, so each layer triples.
  RuleSet dn = rules_from_equations(preset("DN").equations);
  std::size_t expect = dn.size();
  for (int n = 0; n <= 3; ++n, expect *= 3) CHECK(closure_layer(dn, n).size() == expect);
  CHECK(closure_upto(dn, 2).size() == 13 + 39 + 117);

  // ~^{n+1}(p & p) / ~^{n+1}p lives in layer n + 1 and not below.
  for (int n = 0; n <= 3; ++n) {
    Formula a = neg_power(P("p & p"), n + 1), b = neg_power(P("p"), n + 1);
    CHECK(closure_layer(dn, n + 1).covers({a}, b));
    CHECK_FALSE(closure_upto(dn, n).covers({a}, b));
  }
  RuleSet multi;
  multi.add(R("m: p , q |- p"));
  CHECK_THROWS(closure_layer(multi, 1));
}

TEST_CASE("builtin sets", "[calculi]") {
  CHECK(builtin(Builtin::RC).size() == 2);
  CHECK(builtin(Builtin::RF).size() == 3);
  CHECK(builtin(Builtin::RBullet).size() == 6);
  CHECK(builtin(Builtin::SBullet).size() == 3);
  CHECK(builtin(Builtin::RTop).size() == 2);
  CHECK(builtin("R_top").covers({P("p & (~(p & q) | r)")}, P("~q | r")));
  CHECK(builtin("S_bullet").covers({P("~(~p1 & p2)"), P("~(~(p3 & p4) & p2)")}, P("~(~(p1 & p4) & p2)")));
  CHECK(builtin("R_F").covers({}, P("1")));
  CHECK_THROWS(builtin("R_nope"));
}

TEST_CASE("g-layer rules flip at odd n", "[calculi]") {
  Rule r = R("r: phi -||- psi");
  Rule g0 = g_rule(r, 0), g1 = g_rule(r, 1), g2 = g_rule(r, 2);
  CHECK(g0.premises.front() == P("phi & #q0 | #q"));
  CHECK(g0.conclusion == P("psi & #q0 | #q"));
  CHECK(g1.premises.front() == P("~(psi & #q0) & #q1 | #q"));
  CHECK(g1.conclusion == P("~(phi & #q0) & #q1 | #q"));
  CHECK(g2.premises.front() == P("~(~(phi & #q0) & #q1) & #q2 | #q"));
}

TEST_CASE("s-layer rules flip at odd k", "[calculi]") {
  Rule s1 = s_rule(R("o: ~(p & q) |- ~p | ~q"), 1);
  CHECK(s1.premises.front() == P("~(~p | ~q) | #t"));
  CHECK(s1.conclusion == P("~~(p & q) | #t"));
}

TEST_CASE("calculus sizes", "[calculi]") {
  auto eqs = preset("SDM").equations;
  // 4 x 16 layered rules + 6 + 3 + 3 auxiliary, with r_dm_neg_or equal to N2.
  CHECK(sdm_calculus(eqs).size() == 75);
  CHECK(sdm_calculus_reduced(eqs).size() == 59);
  CHECK(sdm_calculus(eqs).find("r_dm_neg_or") == nullptr);
  std::vector<std::string> warnings;
  sdm_calculus(preset("DN").equations, &warnings);
  CHECK(warnings.size() == 3);
  // |R^Eq| + |r1, r2| = 18; s-layers k <= 2m+n; then r_in and /1.
  CHECK(ockham_calculus(1, 0).size() == 18 * 4 + 2);
  CHECK(ockham_calculus(1, 1).size() == 18 * 5 + 2);
  CHECK_THROWS(ockham_calculus(0, 0));
}

TEST_CASE("PL relative axiomatization adds three g-layered rules", "[calculi]") {
  RuleSet base = resolve_ruleset("SDM/sdm");
  RuleSet pl = resolve_ruleset("SDM/sdm+pl");
  CHECK(pl.size() == base.size() + 3);
  CHECK(resolve_ruleset("PL/sdm").size() == 75 + 4);
}

TEST_CASE("equations from rules", "[calculi]") {
  RuleSet rs;
  rs.add(R("adj: p , q |- p & q"));
  rs.add(R("weak: p |- p | q"));
  rs.add(R("top: |- 1"));
  rs.add(builtin(Builtin::RTop).rules().front());
  auto eqs = equations_from_rules(rs);
  REQUIRE(eqs.size() == 4);
  CHECK(eqs[0].lhs == P("(p & q) & (p & q)"));
  CHECK(eqs[0].rhs == P("p & q"));
  CHECK(eqs[1].lhs == P("p & (p | q)"));
  CHECK(eqs[2].lhs == Formula::top());
  CHECK(eqs[3].lhs == P("p & (~(p & q) | r) & (~q | r)"));
  CHECK(equations_from_rules(rules_from_equations({Equation{"d", P("~~x"), P("x")}})).size() == 2);
}

TEST_CASE("rule set identifiers", "[calculi]") {
  CHECK(resolve_ruleset("DN/omega:2").size() == 172);
  CHECK(resolve_ruleset("SDM/assertional").size() == 77);
  CHECK(resolve_ruleset("SDM/sdm+ctx").size() == 79);
  CHECK(resolve_ruleset("Berman(1,1)/ockham").size() == 92);
  CHECK(resolve_ruleset("DN/eq+wxc").find("r_wxc") != nullptr);
  CHECK_THROWS(resolve_ruleset("SDM"));
  CHECK_THROWS(resolve_ruleset("SDM/ockham"));
  CHECK_THROWS(resolve_ruleset("SDM/sdm+bogus"));
}

TEST_CASE("generation is idempotent and renaming-stable", "[calculi]") {
  RuleSet a = sdm_calculus(preset("SDM").equations);
  RuleSet again;
  for (const auto& r : a) again.add(r);
  again.add_all(a);
  CHECK(again.size() == a.size());

  RuleSet r1, r2;
  r1.add(R("x: p & ~q -||- q"));
  r2.add(R("y: u & ~v -||- v"));
  CHECK(g_layers(r1, 2).size() == g_layers(r2, 2).size());
  for (const auto& r : g_layers(r2, 2))
    for (const auto& d : directions(r)) CHECK(g_layers(r1, 2).covers(d.premises, d.conclusion));
}
