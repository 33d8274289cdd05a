#include "hforge/formula.hpp"

#include <cctype>
#include <functional>

namespace hforge {

struct Formula::Node {
  Op op;
  std::string name;
  Formula a;  // null node for leaves
  Formula b;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula() : Formula(bot()) {}

Formula Formula::var(std::string name) {
  std::size_t h = mix(std::hash<std::string>{}(name), 1);
  return Formula(std::make_shared<const Node>(
      Node{Op::Var, std::move(name), Formula(nullptr), Formula(nullptr), h, 1}));
}

Formula Formula::bot() {
  static const Formula f(std::make_shared<const Node>(
      Node{Op::Bot, {}, Formula(nullptr), Formula(nullptr), 0x51ed2701, 1}));
  return f;
}

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(
      Node{Op::Top, {}, Formula(nullptr), Formula(nullptr), 0x7a3c11f9, 1}));
  return f;
}

Formula Formula::neg(const Formula& a) {
  std::size_t h = mix(0x3, a.hash());
  return Formula(std::make_shared<const Node>(
      Node{Op::Neg, {}, a, Formula(nullptr), h, a.size() + 1}));
}

Formula Formula::conj(const Formula& a, const Formula& b) {
  std::size_t h = mix(mix(0x4, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(
      Node{Op::And, {}, a, b, h, a.size() + b.size() + 1}));
}

Formula Formula::disj(const Formula& a, const Formula& b) {
  std::size_t h = mix(mix(0x5, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(
      Node{Op::Or, {}, a, b, h, a.size() + b.size() + 1}));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::child() const { return node_->a; }
const Formula& Formula::left() const { return node_->a; }
const Formula& Formula::right() const { return node_->b; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size() || x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::Var: return x.name() == y.name();
    case Op::Bot:
    case Op::Top: return true;
    case Op::Neg: return x.child() == y.child();
    default: return x.left() == y.left() && x.right() == y.right();
  }
}

std::strong_ordering operator<=>(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (x.op() != y.op()) return x.op() <=> y.op();
  switch (x.op()) {
    case Op::Var: return x.name() <=> y.name();
    case Op::Bot:
    case Op::Top: return std::strong_ordering::equal;
    case Op::Neg: return x.child() <=> y.child();
    default:
      if (auto c = x.left() <=> y.left(); c != 0) return c;
      return x.right() <=> y.right();
  }
}

// ---- names ---------------------------------------------------------------

bool is_reserved_name(std::string_view name) { return !name.empty() && name[0] == '#'; }

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Length of a reserved name at text[pos] ('#', word chars, optional balanced
// bracket group), or 0.
std::size_t reserved_len(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || text[pos] != '#') return 0;
  std::size_t i = pos + 1;
  while (i < text.size() && ident_char(text[i])) ++i;
  if (i < text.size() && text[i] == '[') {
    int depth = 0;
    for (; i < text.size(); ++i) {
      if (text[i] == '[') ++depth;
      if (text[i] == ']' && --depth == 0) return i + 1 - pos;
    }
    return 0;
  }
  return i - pos;
}

}  // namespace

bool is_valid_var_name(std::string_view name, bool allow_reserved) {
  if (name.empty()) return false;
  if (name[0] == '#') return allow_reserved && reserved_len(name, 0) == name.size() && name.size() > 1;
  if (name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name.substr(1))
    if (!ident_char(c)) return false;
  return true;
}

// ---- parser --------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view t, std::size_t pos, ParseOptions o) : text_(t), pos_(pos), opts_(o) {}

  Formula formula() { return disj(); }
  std::size_t pos() {
    skip();
    return pos_;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  Formula disj() {
    Formula f = conj();
    while (peek('|')) {
      ++pos_;
      f = Formula::disj(f, conj());
    }
    return f;
  }
  Formula conj() {
    Formula f = neg();
    while (peek('&')) {
      ++pos_;
      f = Formula::conj(f, neg());
    }
    return f;
  }
  Formula neg() {
    if (peek('~')) {
      ++pos_;
      return Formula::neg(neg());
    }
    return atom();
  }
  Formula atom() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && ident_char(text_[pos_])) throw ParseError("malformed constant", pos_);
      return c == '0' ? Formula::bot() : Formula::top();
    }
    if (c == '(') {
      ++pos_;
      Formula f = disj();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (c == '#') {
      std::size_t len = reserved_len(text_, pos_);
      if (len <= 1) throw ParseError("malformed reserved name", pos_);
      if (!opts_.allow_reserved) throw ParseError("reserved variable name", pos_);
      std::string name(text_.substr(pos_, len));
      pos_ += len;
      return Formula::var(std::move(name));
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      return Formula::var(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_;
  ParseOptions opts_;
};

}  // namespace

Formula parse_formula_prefix(std::string_view text, std::size_t& pos, ParseOptions opts) {
  Parser p(text, pos, opts);
  Formula f = p.formula();
  pos = p.pos();
  return f;
}

Formula parse_formula(std::string_view text, ParseOptions opts) {
  std::size_t pos = 0;
  Formula f = parse_formula_prefix(text, pos, opts);
  if (pos != text.size()) throw ParseError("trailing input", pos);
  return f;
}

// ---- printer -------------------------------------------------------------

namespace {

int prec(const Formula& f) {
  switch (f.op()) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Neg: return 3;
    default: return 4;
  }
}

void emit(const Formula& f, int min_prec, std::string& out) {
  bool paren = prec(f) < min_prec;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Var: out += f.name(); break;
    case Op::Bot: out += '0'; break;
    case Op::Top: out += '1'; break;
    case Op::Neg:
      out += '~';
      emit(f.child(), 3, out);
      break;
    case Op::And:
      emit(f.left(), 2, out);
      out += " & ";
      emit(f.right(), 3, out);
      break;
    case Op::Or:
      emit(f.left(), 1, out);
      out += " | ";
      emit(f.right(), 2, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

// ---- substitution and matching ------------------------------------------

Formula substitute(const Formula& f, const Substitution& s) {
  switch (f.op()) {
    case Op::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Op::Bot:
    case Op::Top: return f;
    case Op::Neg: {
      Formula c = substitute(f.child(), s);
      return c.id() == f.child().id() ? f : Formula::neg(c);
    }
    case Op::And:
    case Op::Or: {
      Formula l = substitute(f.left(), s);
      Formula r = substitute(f.right(), s);
      if (l.id() == f.left().id() && r.id() == f.right().id()) return f;
      return f.op() == Op::And ? Formula::conj(l, r) : Formula::disj(l, r);
    }
  }
  return f;
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [k, v] : s1) out.emplace(k, substitute(v, s2));
  for (const auto& [k, v] : s2) out.emplace(k, v);
  return out;
}

bool match(const Formula& pattern, const Formula& term, Substitution& s) {
  switch (pattern.op()) {
    case Op::Var: {
      auto [it, inserted] = s.emplace(pattern.name(), term);
      return inserted || it->second == term;
    }
    case Op::Bot:
    case Op::Top: return term.op() == pattern.op();
    case Op::Neg: return term.op() == Op::Neg && match(pattern.child(), term.child(), s);
    case Op::And:
    case Op::Or:
      return term.op() == pattern.op() && match(pattern.left(), term.left(), s) &&
             match(pattern.right(), term.right(), s);
  }
  return false;
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Var: out.insert(f.name()); break;
    case Op::Bot:
    case Op::Top: break;
    case Op::Neg: collect_vars(f.child(), out); break;
    default:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
  }
}

std::set<std::string> vars(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.op()) {
    case Op::Neg: collect_subformulas(f.child(), out); break;
    case Op::And:
    case Op::Or:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      break;
    default: break;
  }
}

Formula neg_power(const Formula& f, int k) {
  Formula g = f;
  for (int i = 0; i < k; ++i) g = Formula::neg(g);
  return g;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

}  // namespace hforge
