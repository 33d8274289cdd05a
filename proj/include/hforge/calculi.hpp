#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hforge/formula.hpp"
#include "hforge/rule.hpp"

namespace hforge {

struct Variety {
  enum class Kind { DN, SDM, DM, PL, O, Berman, B };
  Kind kind = Kind::DN;
  int m = 0;
  int n = 0;

  std::string name() const;
  // Accepts DN, SDM, DM, PL, O, B, Berman(m,n) and Berman:m:n.
  static Variety parse(std::string_view s);
  friend bool operator==(const Variety&, const Variety&) = default;
};

struct Presentation {
  std::string name;
  std::vector<Equation> equations;
};

// Labels: L1_or, L1_and, ..., L6, N1, N2, SDM1..3, DM, PL, O, BER, B_and, B_or.
Presentation preset(const Variety& v);
Presentation preset(std::string_view name);

// Equation variables map to p, q, r, s, u, v, w, p7, p8, ... by first
// occurrence (lhs before rhs).
RuleSet rules_from_equations(const std::vector<Equation>& eqs);

// R_n alone (R_0 = rs). Layer k+1 conjoins/disjoins the fresh #q<k>.
RuleSet closure_layer(const RuleSet& rs, int n);
RuleSet closure_upto(const RuleSet& rs, int n);

enum class Builtin { RC, RF, RBullet, SBullet, RTop };
RuleSet builtin(Builtin b);
RuleSet builtin(std::string_view name);  // R_C, R_F, R_bullet, S_bullet, R_top

// g_n(phi) | #q / g_n(psi) | #q, premise and conclusion swapped for odd n.
Rule g_rule(const Rule& r, int n);
RuleSet g_layer(const RuleSet& rs, int n);
RuleSet g_layers(const RuleSet& rs, int n);  // rs plus layers 0..n

// ~^k(phi) | #t / ~^k(psi) | #t, swapped for odd k.
Rule s_rule(const Rule& r, int k);

// Warnings (missing SDM equations) go to *warnings when given.
RuleSet sdm_calculus(const std::vector<Equation>& eqs, std::vector<std::string>* warnings = nullptr);
// The calculus minus every rule covered by R^Eq.
RuleSet sdm_calculus_reduced(const std::vector<Equation>& eqs);

RuleSet ockham_calculus(int m, int n);

// Rules used by several derivation scripts and the countermodel suite.
Rule rule_wxc();    // p & ~p / ~q
Rule rule_in_and(); // p, q / p & q
// Context-carrying variants of the S_bullet rules: every formula sits under
// (. & t) | r.
RuleSet context_rules();

// Gamma/phi gives /\Gamma & phi = /\Gamma; axioms give phi = 1.
std::vector<Equation> equations_from_rules(const RuleSet& rs);

// Identifier grammar: <variety>/<target>[+ext]*, target one of sdm,
// sdm-reduced, omega:<n>, ockham, assertional; ext one of ctx, g<N>, pl, wxc.
RuleSet resolve_ruleset(std::string_view id);

}  // namespace hforge
