#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hforge {

enum class Op : std::uint8_t { Var, Bot, Top, Neg, And, Or };

// Immutable shared formula tree. Copies are cheap; equality is structural.
class Formula {
 public:
  Formula();  // Bot

  static Formula var(std::string name);
  static Formula bot();
  static Formula top();
  static Formula neg(const Formula& a);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);

  Op op() const;
  const std::string& name() const;  // Var only
  const Formula& child() const;     // Neg only
  const Formula& left() const;      // And/Or
  const Formula& right() const;     // And/Or

  bool is_var() const { return op() == Op::Var; }
  std::size_t size() const;
  std::size_t hash() const;
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using Substitution = std::map<std::string, Formula>;

struct Equation {
  std::string label;
  Formula lhs;
  Formula rhs;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Variables starting with '#' are generated internally. User input rejects
// them unless allow_reserved is set.
struct ParseOptions {
  bool allow_reserved = false;
};

Formula parse_formula(std::string_view text, ParseOptions opts = {});
std::string print(const Formula& f);
bool is_reserved_name(std::string_view name);
bool is_valid_var_name(std::string_view name, bool allow_reserved);

// Parses a formula starting at text[pos]; advances pos past it.
Formula parse_formula_prefix(std::string_view text, std::size_t& pos, ParseOptions opts = {});

Formula substitute(const Formula& f, const Substitution& s);
// (s1 then s2): applies s2 to the images of s1 and adds s2's other bindings.
Substitution compose(const Substitution& s1, const Substitution& s2);

// One-way matching: extends s so that substitute(pattern, s) == term.
bool match(const Formula& pattern, const Formula& term, Substitution& s);

void collect_vars(const Formula& f, std::set<std::string>& out);
std::set<std::string> vars(const Formula& f);
void collect_subformulas(const Formula& f, std::vector<Formula>& out);

Formula neg_power(const Formula& f, int k);
Formula conj_all(const std::vector<Formula>& fs);  // left fold; empty -> Top

}  // namespace hforge
