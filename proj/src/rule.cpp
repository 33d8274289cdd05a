#include "hforge/rule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hforge {

std::string Provenance::str() const {
  switch (kind) {
    case Kind::User: return "user";
    case Kind::Equation: return "equation";
    case Kind::Closure: return "closure:" + std::to_string(layer);
    case Kind::GLayer: return "g:" + std::to_string(layer);
    case Kind::SLayer: return "s:" + std::to_string(layer);
    case Kind::Builtin: return "builtin:" + source;
    case Kind::Auxiliary: return "aux:" + source;
  }
  return "user";
}

Provenance Provenance::parse(std::string_view s) {
  Provenance p;
  auto colon = s.find(':');
  std::string_view head = s.substr(0, colon);
  std::string_view tail = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (head == "equation") {
    p.kind = Kind::Equation;
  } else if (head == "closure" || head == "g" || head == "s") {
    p.kind = head == "closure" ? Kind::Closure : head == "g" ? Kind::GLayer : Kind::SLayer;
    p.layer = std::stoi(std::string(tail));
  } else if (head == "builtin") {
    p.kind = Kind::Builtin;
    p.source = tail;
  } else if (head == "aux") {
    p.kind = Kind::Auxiliary;
    p.source = tail;
  }
  return p;
}

std::vector<RuleDirection> directions(const Rule& r) {
  std::vector<RuleDirection> out;
  out.push_back({r.name, false, r.premises, r.conclusion});
  if (r.bidirectional) out.push_back({r.name, true, {r.conclusion}, r.premises.front()});
  return out;
}

std::set<std::string> rule_vars(const RuleDirection& d) {
  std::set<std::string> out;
  for (const auto& p : d.premises) collect_vars(p, out);
  collect_vars(d.conclusion, out);
  return out;
}

namespace {

void rename_order(const Formula& f, std::vector<std::string>& order) {
  switch (f.op()) {
    case Op::Var:
      if (std::find(order.begin(), order.end(), f.name()) == order.end()) order.push_back(f.name());
      break;
    case Op::Neg: rename_order(f.child(), order); break;
    case Op::And:
    case Op::Or:
      rename_order(f.left(), order);
      rename_order(f.right(), order);
      break;
    default: break;
  }
}

std::string key_for_order(const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<std::string> order;
  for (const auto& p : premises) rename_order(p, order);
  rename_order(conclusion, order);
  Substitution s;
  for (std::size_t i = 0; i < order.size(); ++i) s.emplace(order[i], Formula::var("#v" + std::to_string(i)));
  std::string key;
  for (const auto& p : premises) key += print(substitute(p, s)) + " , ";
  key += "|- " + print(substitute(conclusion, s));
  return key;
}

}  // namespace

std::string canonical_key(const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<std::size_t> idx(premises.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::string best;
  bool first = true;
  do {
    std::vector<Formula> ps;
    for (auto i : idx) ps.push_back(premises[i]);
    std::string k = key_for_order(ps, conclusion);
    if (first || k < best) best = k;
    first = false;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

bool RuleSet::covers(const std::vector<Formula>& premises, const Formula& conclusion) const {
  return keys_.count(canonical_key(premises, conclusion)) > 0;
}

bool RuleSet::add(const Rule& r) {
  auto dirs = directions(r);
  bool all = true;
  for (const auto& d : dirs)
    if (!covers(d.premises, d.conclusion)) all = false;
  if (all) return false;
  if (by_name_.count(r.name)) throw std::invalid_argument("duplicate rule name: " + r.name);
  push(r);
  return true;
}

void RuleSet::push(const Rule& r) {
  for (const auto& d : directions(r)) keys_.insert(canonical_key(d.premises, d.conclusion));
  by_name_.emplace(r.name, rules_.size());
  rules_.push_back(r);
}

void RuleSet::add_all(const RuleSet& other) {
  for (const auto& r : other) add(r);
}

const Rule* RuleSet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &rules_[it->second];
}

// ---- text form ------------------------------------------------------------

std::string print_rule(const Rule& r) {
  std::string out = r.name + ": ";
  if (r.bidirectional) return out + print(r.premises.front()) + " -||- " + print(r.conclusion);
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i) out += " , ";
    out += print(r.premises[i]);
  }
  if (!r.premises.empty()) out += ' ';
  return out + "|- " + print(r.conclusion);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  auto c = s.find("--");
  // "-||-" contains no "--", and formulas never contain '-'.
  return c == std::string_view::npos ? s : s.substr(0, c);
}

}  // namespace

Rule parse_rule(std::string_view line, ParseOptions opts) {
  line = trim(strip_comment(line));
  auto colon = line.find(':');
  if (colon == std::string_view::npos) throw ParseError("rule needs 'name:' prefix", 0);
  Rule r;
  r.name = std::string(trim(line.substr(0, colon)));
  if (r.name.empty() || r.name.find_first_of(" \t,{};") != std::string::npos)
    throw ParseError("bad rule name", 0);
  std::string_view body = line.substr(colon + 1);
  if (auto bi = body.find("-||-"); bi != std::string_view::npos) {
    r.bidirectional = true;
    r.premises.push_back(parse_formula(trim(body.substr(0, bi)), opts));
    r.conclusion = parse_formula(trim(body.substr(bi + 4)), opts);
    return r;
  }
  auto turn = body.find("|-");
  if (turn == std::string_view::npos) throw ParseError("rule needs '|-' or '-||-'", colon);
  std::string_view lhs = trim(body.substr(0, turn));
  while (!lhs.empty()) {
    auto comma = lhs.find(',');
    r.premises.push_back(parse_formula(trim(lhs.substr(0, comma)), opts));
    if (comma == std::string_view::npos) break;
    lhs = trim(lhs.substr(comma + 1));
    if (lhs.empty()) throw ParseError("empty premise", colon);
  }
  r.conclusion = parse_formula(trim(body.substr(turn + 2)), opts);
  return r;
}

RuleSet parse_rules(std::string_view text, ParseOptions opts) {
  RuleSet rs;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(strip_comment(line)).empty()) continue;
    rs.push(parse_rule(line, opts));
  }
  return rs;
}

std::string print_rules(const RuleSet& rs) {
  std::string out;
  for (const auto& r : rs) out += print_rule(r) + "\n";
  return out;
}

std::vector<Equation> parse_equations(std::string_view text, ParseOptions opts) {
  std::vector<Equation> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    ++n;
    Equation e;
    auto colon = line.find(':');
    if (colon != std::string_view::npos) {
      e.label = std::string(trim(line.substr(0, colon)));
      line = trim(line.substr(colon + 1));
    } else {
      e.label = "E" + std::to_string(n);
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("equation needs '='", 0);
    e.lhs = parse_formula(trim(line.substr(0, eq)), opts);
    e.rhs = parse_formula(trim(line.substr(eq + 1)), opts);
    out.push_back(std::move(e));
  }
  return out;
}

std::string print_equation(const Equation& e) {
  return e.label + ": " + print(e.lhs) + " = " + print(e.rhs);
}

}  // namespace hforge
