#include "hforge/transform.hpp"

#include <algorithm>
#include <map>

namespace hforge {

const char* const kFreshQ = "#q";
const char* const kFreshT = "#t";

int neg_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Neg: return 1 + neg_depth(f.child());
    case Op::And:
    case Op::Or: return std::max(neg_depth(f.left()), neg_depth(f.right()));
    default: return 0;
  }
}

namespace {

// false once some variable is seen at two depths
bool var_depths(const Formula& f, int d, std::map<std::string, int>& seen) {
  switch (f.op()) {
    case Op::Var: {
      auto [it, inserted] = seen.emplace(f.name(), d);
      return inserted || it->second == d;
    }
    case Op::Neg: return var_depths(f.child(), d + 1, seen);
    case Op::And:
    case Op::Or: return var_depths(f.left(), d, seen) && var_depths(f.right(), d, seen);
    default: return true;
  }
}

}  // namespace

bool is_balanced(const Rule& r) {
  std::map<std::string, int> seen;
  for (const auto& p : r.premises)
    if (!var_depths(p, 0, seen)) return false;
  return var_depths(r.conclusion, 0, seen);
}

int ruleset_depth(const RuleSet& rs) {
  int d = 0;
  for (const auto& r : rs) {
    for (const auto& p : r.premises) d = std::max(d, neg_depth(p));
    d = std::max(d, neg_depth(r.conclusion));
  }
  return d;
}

bool ruleset_balanced(const RuleSet& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Rule& r) { return is_balanced(r); });
}

std::string fresh_q(int i) { return std::string(kFreshQ) + std::to_string(i); }

std::string indexed_name(const Formula& negated) { return "#n[" + print(negated) + "]"; }

Formula f_k(int k, const Formula& f) {
  switch (f.op()) {
    case Op::Neg:
      if (k == 0) return Formula::var(indexed_name(f));
      return Formula::neg(f_k(k - 1, f.child()));
    case Op::And: return Formula::conj(f_k(k, f.left()), f_k(k, f.right()));
    case Op::Or: return Formula::disj(f_k(k, f.left()), f_k(k, f.right()));
    default: return f;
  }
}

Formula g_n(int n, const Formula& f) {
  Formula g = Formula::conj(f, Formula::var(fresh_q(0)));
  for (int i = 1; i <= n; ++i) g = Formula::conj(Formula::neg(g), Formula::var(fresh_q(i)));
  return g;
}

Formula star(const Formula& f) {
  switch (f.op()) {
    case Op::Neg: return Formula::neg(star(f.child()));
    case Op::And: return Formula::conj(star(f.left()), star(f.right()));
    case Op::Or: return neg_power(Formula::disj(star(f.left()), star(f.right())), 2);
    default: return neg_power(f, 2);
  }
}

}  // namespace hforge
