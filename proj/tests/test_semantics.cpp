#include <catch_amalgamated.hpp>

#include "hforge/calculi.hpp"
#include "hforge/search.hpp"
#include "hforge/semantics.hpp"
#include "hforge/transform.hpp"
#include "support.hpp"

using namespace hforge;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Consecution C(const char* s) { return parse_consecution(s); }

std::vector<FiniteAlgebra> algs(const char* cls, int max) { return enumerate_algebras({Variety::parse(cls), max}); }

const std::vector<FiniteAlgebra>& dn3() {
  static const auto a = algs("DN", 3);
  return a;
}

}  // namespace

TEST_CASE("consecution text", "[semantics]") {
  Consecution c = C("p, q |- p & q");
  CHECK(c.premises.size() == 2);
  CHECK(print_consecution(c) == "p, q |- p & q");
  CHECK(C("|- 1").premises.empty());
  CHECK_THROWS(C("p & q"));
}

TEST_CASE("matrix entailment", "[semantics]") {
  CHECK(matrix_entails({boolean2(), 0b10}, C("p, q |- p & q")).ok);
  Verdict v = matrix_entails({belnap4(), 0b1010}, C("p & ~p |- ~q"));
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.witness);
  CHECK(v.witness->valuation.at("p") == 1);
  CHECK(v.witness->valuation.at("q") == 2);
  std::size_t refuting = 0;
  for (Elem p = 0; p < 4; ++p)
    for (Elem q = 0; q < 4; ++q) {
      Witness w{belnap4(), 0b1010, {{"p", p}, {"q", q}}, "", 0, false};
      refuting += witness_refutes(w, C("p & ~p |- ~q"));
    }
  CHECK(refuting == 2);  // p = a, q = b or q = 1
  for (const auto& a : dn3())
    for (ElemSet f : filters(a)) CHECK(matrix_entails({a, f}, C("p | ~q |- p | ~q")).ok);
}

TEST_CASE("order and assertional entailment", "[semantics]") {
  CHECK(order_entails({boolean2()}, C("p |- p | q")).ok);
  CHECK_FALSE(order_entails({belnap4()}, C("p & ~p |- ~q")).ok);
  CHECK(order_entails(dn3(), C("|- 1")).ok);
  CHECK_THROWS(order_entails({chain(2, {0, 0})}, C("p |- p")));
  CHECK(assertional_entails(algs("DM", 5), C("p & ~p |- ~q")).ok);
  CHECK(assertional_entails({boolean2()}, C("p |- ~~p")).ok);
}

TEST_CASE("rule soundness", "[semantics]") {
  RuleSet sb = builtin(Builtin::SBullet);
  const Rule* neg_and = sb.find("r_neg_and");
  REQUIRE(neg_and);
  CHECK(rule_sound(*neg_and, algs("SDM", 5), SemanticsMode::filter()).ok);

  Verdict w = rule_sound(rule_wxc(), algs("DM", 4), SemanticsMode::filter());
  REQUIRE_FALSE(w.ok);
  // The first witness is the Kleene 3-chain with D = {a, 1}; Belnap with
  // D = {a, 1} refutes it too.
  CHECK(w.witness->algebra == chain(3, {2, 1, 0}));
  CHECK(w.witness->designated == 0b110);
  CHECK_FALSE(rule_sound(rule_wxc(), {belnap4()}, SemanticsMode::fixed(0b1010)).ok);
  CHECK(witness_refutes(*w.witness, rule_wxc()));

  // Bidirectional rules are checked in both directions.
  Rule proj = parse_rule("proj: p & q -||- p");
  Verdict d = rule_sound(proj, algs("DN", 3), SemanticsMode::filter());
  REQUIRE_FALSE(d.ok);
  CHECK(d.witness->backward);
}

TEST_CASE("star translation of a De Morgan rule", "[semantics]") {
  // The conclusion has ~p2, matching the conclusion of r_neg_and; with p2
  // in its place the rule already fails over DM.
  Formula phi = P("(p1 | ~p2) & ((p3 & p4) | ~p2)");
  Formula psi = P("(p1 & p4) | ~p2");
  auto dm5 = algs("DM", 5), sdm5 = algs("SDM", 5);
  CHECK(consecution_sound({{phi}, psi}, dm5, SemanticsMode::filter()).ok);
  CHECK(consecution_sound({{star(phi)}, star(psi)}, sdm5, SemanticsMode::filter()).ok);
  CHECK_FALSE(consecution_sound({{phi}, P("(p1 & p4) | p2")}, dm5, SemanticsMode::filter()).ok);
}

TEST_CASE("semantics mode names", "[semantics]") {
  CHECK(SemanticsMode::parse("filter").kind == SemanticsMode::Kind::Filter);
  CHECK(SemanticsMode::parse("assertional").kind == SemanticsMode::Kind::Assertional);
  CHECK(SemanticsMode::fixed(0b1010).name() == "fixed" + element_set_str(0b1010));
  CHECK_THROWS(SemanticsMode::parse("bogus"));
}

TEST_CASE("serial and parallel soundness agree", "[semantics]") {
  auto dn4 = algs("DN", 4);
  for (const auto& r : sdm_calculus(preset("SDM").equations)) {
    for (auto mode : {SemanticsMode::filter(), SemanticsMode::assertional()}) {
      Verdict a = rule_sound(r, dn4, mode), b = rule_sound_serial(r, dn4, mode);
      REQUIRE(a.ok == b.ok);
      if (!a.ok) {
        REQUIRE(a.witness->algebra_index == b.witness->algebra_index);
        REQUIRE(a.witness->designated == b.witness->designated);
        REQUIRE(a.witness->valuation == b.witness->valuation);
      }
    }
  }
}

TEST_CASE("order entailment equals all-filters entailment", "[semantics][property]") {
  testing::Rng rng(31);
  for (int i = 0; i < 10000; ++i) {
    Consecution c = testing::random_consecution(rng, {"p", "q", "r"}, 9);
    REQUIRE(order_entails(dn3(), c).ok == consecution_sound(c, dn3(), SemanticsMode::filter()).ok);
  }
}

TEST_CASE("assertional is at least as strong as order", "[semantics][property]") {
  testing::Rng rng(32);
  for (int i = 0; i < 10000; ++i) {
    Consecution c = testing::random_consecution(rng, {"p", "q"}, 9);
    if (order_entails(dn3(), c).ok) REQUIRE(assertional_entails(dn3(), c).ok);
  }
}

TEST_CASE("adding algebras only removes consequences", "[semantics][property]") {
  testing::Rng rng(33);
  std::vector<FiniteAlgebra> small(dn3().begin(), dn3().begin() + 3);
  for (int i = 0; i < 10000; ++i) {
    Consecution c = testing::random_consecution(rng, {"p", "q", "r"}, 9);
    if (!order_entails(small, c).ok) REQUIRE_FALSE(order_entails(dn3(), c).ok);
  }
}

TEST_CASE("matrix entailment is structural", "[semantics][property]") {
  testing::Rng rng(34);
  const std::vector<std::string> vs{"p", "q", "r"};
  const auto& as = dn3();
  for (int i = 0; i < 10000; ++i) {
    Consecution c = testing::random_consecution(rng, vs, 7);
    const FiniteAlgebra& a = as[rng() % as.size()];
    auto fs = filters(a);
    Matrix m{a, fs[rng() % fs.size()]};
    if (!matrix_entails(m, c).ok) continue;
    Substitution s;
    for (const auto& v : vs) s[v] = testing::random_formula(rng, vs, 4);
    Consecution d;
    for (const auto& p : c.premises) d.premises.push_back(substitute(p, s));
    d.conclusion = substitute(c.conclusion, s);
    REQUIRE(matrix_entails(m, d).ok);
  }
}
