#pragma once

// Shared generators for the property suites and the acceptance binary.

#include <random>
#include <string>
#include <vector>

#include "hforge/formula.hpp"
#include "hforge/semantics.hpp"

namespace hforge::testing {

using Rng = std::mt19937_64;

// Random formula with at most max_size nodes over the given variables.
inline Formula random_formula(Rng& rng, const std::vector<std::string>& vars, int max_size) {
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  if (max_size <= 1) {
    int k = pick(static_cast<int>(vars.size()) + 2);
    if (k == 0) return Formula::bot();
    if (k == 1) return Formula::top();
    return Formula::var(vars[k - 2]);
  }
  switch (pick(4)) {
    case 0: return random_formula(rng, vars, 1);
    case 1: return Formula::neg(random_formula(rng, vars, max_size - 1));
    default: {
      int left = 1 + pick(max_size - 2 > 0 ? max_size - 2 : 1);
      Formula a = random_formula(rng, vars, left);
      Formula b = random_formula(rng, vars, max_size - 1 - static_cast<int>(a.size()));
      return pick(2) ? Formula::conj(a, b) : Formula::disj(a, b);
    }
  }
}

inline Consecution random_consecution(Rng& rng, const std::vector<std::string>& vars, int max_size) {
  Consecution c;
  int n = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < n; ++i) c.premises.push_back(random_formula(rng, vars, max_size));
  c.conclusion = random_formula(rng, vars, max_size);
  return c;
}

}  // namespace hforge::testing
