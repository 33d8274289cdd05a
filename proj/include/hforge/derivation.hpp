#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hforge/rule.hpp"
#include "hforge/semantics.hpp"

namespace hforge {

struct Justification {
  bool premise = true;
  std::string rule;
  bool backward = false;
  Substitution subst;      // rule variables absent here map to themselves
  std::vector<int> cites;  // 1-based step numbers
};

struct Step {
  std::optional<Formula> formula;  // empty only in unelaborated scripts
  Justification just;
};

struct Derivation {
  std::string name;
  std::string ruleset;  // resolve_ruleset id
  std::optional<Consecution> goal;
  std::vector<Step> steps;
  std::vector<std::string> notes;  // leading comment lines, kept on print
};

// Script text. Header lines "name:", "ruleset:", "goal:" are optional; step
// lines are "k. <formula> ; premise" or
// "k. <formula> ; by <rule> [fwd|bwd] {x:=f, ...} from k1,k2".
// With allow_holes, "?" stands for a formula to be filled by elaborate().
Derivation parse_derivation(std::string_view text, bool allow_holes = false);
std::string print_derivation(const Derivation& d);

struct CheckError {
  enum class Kind { BadCitation, SubstitutionMismatch, UnknownRule, ConclusionMismatch, Malformed };
  Kind kind;
  int step = 0;  // 1-based; 0 when the derivation as a whole is at fault
  std::string reason;
  std::string str() const;
};

struct CheckResult {
  std::optional<CheckError> error;
  bool ok() const { return !error; }
};

CheckResult check_derivation(const RuleSet& rs, const Derivation& d, const Consecution& goal);
// Uses d.goal; a missing goal is Malformed.
CheckResult check_derivation(const RuleSet& rs, const Derivation& d);

// Fills "?" steps with the instantiated rule conclusion. Throws on a hole
// justified as premise or on an unknown rule.
Derivation elaborate(const RuleSet& rs, Derivation d);

// Applies s to every formula and composes it into every step substitution.
Derivation substitute(const Derivation& d, const Substitution& s);

}  // namespace hforge
