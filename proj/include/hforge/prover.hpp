#pragma once

#include <string>

#include "hforge/derivation.hpp"

namespace hforge {

struct SearchBudget {
  int max_formula_size = 40;
  int max_steps = 20000;  // derived formulas, forward and backward together
  int max_depth = 12;     // forward levels plus backward levels
};

struct ProveResult {
  bool found = false;
  Derivation derivation;
  int steps = 0;  // formulas derived before stopping
  int depth = 0;  // levels completed
  std::string exhausted;  // which budget ran out, when not found
};

// Level-by-level forward saturation from the premises, met by backward
// regression of the goal through single-premise rules. Rule variables that do
// not occur in the premises (forward) or conclusion (backward) range over the
// subformulas of the goal plus 0 and 1. Deterministic; any returned derivation
// passes check_derivation.
ProveResult prove(const RuleSet& rs, const Consecution& c, const SearchBudget& budget = {});

}  // namespace hforge
