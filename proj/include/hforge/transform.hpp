#pragma once

#include <string>

#include "hforge/formula.hpp"
#include "hforge/rule.hpp"

namespace hforge {

// Largest count of ~-ancestors over atomic occurrences (variables and
// constants). Constant-only formulas count their constants too.
int neg_depth(const Formula& f);

// True iff every variable's occurrences across the rule share one depth.
bool is_balanced(const Rule& r);
int ruleset_depth(const RuleSet& rs);
bool ruleset_balanced(const RuleSet& rs);

// Fresh-variable names. These never collide with user variables.
std::string fresh_q(int i);   // "#q<i>"
extern const char* const kFreshQ;  // "#q"
extern const char* const kFreshT;  // "#t"
std::string indexed_name(const Formula& negated);  // "#n[<print>]"

// Replaces every ~-headed subformula at ~-depth exactly k by its indexed
// variable.
Formula f_k(int k, const Formula& f);

// g_0(x) = x & q0, g_{n+1}(x) = ~g_n(x) & q_{n+1}.
Formula g_n(int n, const Formula& f);

// (p)* = ~~p, (1)* = ~~1, (0)* = ~~0, (~a)* = ~a*, (a&b)* = a* & b*,
// (a|b)* = ~~(a* | b*).
Formula star(const Formula& f);

}  // namespace hforge
