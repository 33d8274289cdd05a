#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hforge/formula.hpp"

namespace hforge {

struct Provenance {
  enum class Kind { User, Equation, Closure, GLayer, SLayer, Builtin, Auxiliary };
  Kind kind = Kind::User;
  int layer = -1;
  std::string source;  // builtin family or originating rule

  std::string str() const;
  static Provenance parse(std::string_view s);
};

// Gamma / phi. A bidirectional rule has exactly one premise and stands for
// both phi/psi and psi/phi.
struct Rule {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  bool bidirectional = false;
  Provenance provenance;
};

// One direction of a rule, as used for derivation steps.
struct RuleDirection {
  std::string name;
  bool backward = false;
  std::vector<Formula> premises;
  Formula conclusion;
};

std::vector<RuleDirection> directions(const Rule& r);
std::set<std::string> rule_vars(const RuleDirection& d);

// Key invariant under variable renaming (and premise order).
std::string canonical_key(const std::vector<Formula>& premises, const Formula& conclusion);

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::string name) : name_(std::move(name)) {}

  // Returns false when every direction of r is already covered.
  bool add(const Rule& r);
  void add_all(const RuleSet& other);
  // Unconditional insert, used when reading serialized rule sets.
  void push(const Rule& r);

  std::size_t size() const { return rules_.size(); }
  const std::vector<Rule>& rules() const { return rules_; }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }
  const Rule* find(std::string_view name) const;
  bool covers(const std::vector<Formula>& premises, const Formula& conclusion) const;

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  std::string name_;
  std::vector<Rule> rules_;
  std::set<std::string> keys_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

// Text form: "name: f1 , f2 |- g" or "name: f -||- g". Lines may carry "--"
// comments.
std::string print_rule(const Rule& r);
Rule parse_rule(std::string_view line, ParseOptions opts = {});
RuleSet parse_rules(std::string_view text, ParseOptions opts = {});
std::string print_rules(const RuleSet& rs);

// Equation file: one "lhs = rhs" per line, with optional "label:" prefix.
std::vector<Equation> parse_equations(std::string_view text, ParseOptions opts = {});
std::string print_equation(const Equation& e);

}  // namespace hforge
