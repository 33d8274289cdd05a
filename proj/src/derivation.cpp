#include "hforge/derivation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hforge {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, 0);
}

int parse_int(std::string_view s, int line) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(line, "expected a step number, got '" + std::string(s) + "'");
  return v;
}

// "{x:=f, y:=g}" starting at s[pos] == '{'.
Substitution parse_subst(std::string_view s, std::size_t& pos, int line) {
  Substitution out;
  ++pos;
  auto skip = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  };
  skip();
  if (pos < s.size() && s[pos] == '}') {
    ++pos;
    return out;
  }
  for (;;) {
    skip();
    auto eq = s.find(":=", pos);
    if (eq == std::string_view::npos) fail(line, "substitution entry needs ':='");
    std::string key(trim(s.substr(pos, eq - pos)));
    if (!is_valid_var_name(key, true)) fail(line, "bad substitution variable '" + key + "'");
    pos = eq + 2;
    Formula f;
    try {
      f = parse_formula_prefix(s, pos);
    } catch (const ParseError& e) {
      fail(line, e.what());
    }
    if (!out.emplace(key, f).second) fail(line, "variable '" + key + "' bound twice");
    skip();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < s.size() && s[pos] == '}') {
      ++pos;
      return out;
    }
    fail(line, "expected ',' or '}' in substitution");
  }
}

Justification parse_just(std::string_view s, int line) {
  Justification j;
  s = trim(s);
  if (s == "premise") return j;
  if (!starts_with(s, "by ")) fail(line, "justification must be 'premise' or 'by <rule> ...'");
  j.premise = false;
  std::size_t pos = 3;
  while (pos < s.size() && s[pos] == ' ') ++pos;
  auto end = s.find_first_of(" \t", pos);
  j.rule = std::string(s.substr(pos, end == std::string_view::npos ? end : end - pos));
  pos = end == std::string_view::npos ? s.size() : end;
  for (;;) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) break;
    std::string_view rest = s.substr(pos);
    if (starts_with(rest, "fwd")) {
      pos += 3;
    } else if (starts_with(rest, "bwd")) {
      j.backward = true;
      pos += 3;
    } else if (rest[0] == '{') {
      j.subst = parse_subst(s, pos, line);
    } else if (starts_with(rest, "from")) {
      std::string_view list = rest.substr(4);
      std::size_t at = 0;
      while (at <= list.size()) {
        auto comma = list.find(',', at);
        j.cites.push_back(parse_int(list.substr(at, comma == std::string_view::npos ? comma : comma - at), line));
        if (comma == std::string_view::npos) break;
        at = comma + 1;
      }
      break;
    } else {
      fail(line, "unexpected '" + std::string(rest) + "'");
    }
  }
  return j;
}

}  // namespace

Derivation parse_derivation(std::string_view text, bool allow_holes) {
  Derivation d;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view l = raw;
    auto comment = l.find("--");
    if (comment != std::string_view::npos) {
      if (d.steps.empty() && trim(l.substr(0, comment)).empty())
        d.notes.emplace_back(trim(l.substr(comment + 2)));
      l = l.substr(0, comment);
    }
    l = trim(l);
    if (l.empty()) continue;
    if (starts_with(l, "name:")) {
      d.name = std::string(trim(l.substr(5)));
    } else if (starts_with(l, "ruleset:")) {
      d.ruleset = std::string(trim(l.substr(8)));
    } else if (starts_with(l, "goal:")) {
      try {
        d.goal = parse_consecution(l.substr(5));
      } catch (const ParseError& e) {
        fail(line, e.what());
      }
    } else {
      auto dot = l.find('.');
      if (dot == std::string_view::npos) fail(line, "expected 'k. <formula> ; <justification>'");
      int k = parse_int(l.substr(0, dot), line);
      if (k != static_cast<int>(d.steps.size()) + 1)
        fail(line, "step " + std::to_string(k) + " out of sequence");
      auto semi = l.find(';', dot);
      if (semi == std::string_view::npos) fail(line, "step needs '; <justification>'");
      Step st;
      std::string_view ftext = trim(l.substr(dot + 1, semi - dot - 1));
      if (ftext == "?" && allow_holes) {
        st.formula.reset();
      } else {
        try {
          st.formula = parse_formula(ftext);
        } catch (const ParseError& e) {
          fail(line, e.what());
        }
      }
      st.just = parse_just(l.substr(semi + 1), line);
      d.steps.push_back(std::move(st));
    }
  }
  return d;
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  for (const auto& n : d.notes) out += "-- " + n + "\n";
  if (!d.name.empty()) out += "name: " + d.name + "\n";
  if (!d.ruleset.empty()) out += "ruleset: " + d.ruleset + "\n";
  if (d.goal) out += "goal: " + print_consecution(*d.goal) + "\n";
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& st = d.steps[i];
    out += std::to_string(i + 1) + ". " + (st.formula ? print(*st.formula) : "?") + " ; ";
    if (st.just.premise) {
      out += "premise\n";
      continue;
    }
    out += "by " + st.just.rule;
    if (st.just.backward) out += " bwd";
    if (!st.just.subst.empty()) {
      out += " {";
      bool first = true;
      for (const auto& [k, v] : st.just.subst) {
        if (!first) out += ", ";
        first = false;
        out += k + ":=" + print(v);
      }
      out += "}";
    }
    if (!st.just.cites.empty()) {
      out += " from ";
      for (std::size_t c = 0; c < st.just.cites.size(); ++c) {
        if (c) out += ",";
        out += std::to_string(st.just.cites[c]);
      }
    }
    out += "\n";
  }
  return out;
}

std::string CheckError::str() const {
  const char* k = "";
  switch (kind) {
    case Kind::BadCitation: k = "bad citation"; break;
    case Kind::SubstitutionMismatch: k = "substitution mismatch"; break;
    case Kind::UnknownRule: k = "unknown rule"; break;
    case Kind::ConclusionMismatch: k = "conclusion mismatch"; break;
    case Kind::Malformed: k = "malformed"; break;
  }
  std::string out = step ? "step " + std::to_string(step) + ": " : std::string();
  return out + k + (reason.empty() ? "" : ": " + reason);
}

namespace {

const RuleDirection* pick_direction(const Rule& r, bool backward, std::vector<RuleDirection>& store) {
  store = directions(r);
  for (const auto& d : store)
    if (d.backward == backward) return &d;
  return nullptr;
}

Substitution full_subst(const RuleDirection& d, const Substitution& s) {
  Substitution out = s;
  for (const auto& v : rule_vars(d)) out.try_emplace(v, Formula::var(v));
  return out;
}

}  // namespace

CheckResult check_derivation(const RuleSet& rs, const Derivation& d, const Consecution& goal) {
  using K = CheckError::Kind;
  auto err = [](K k, int step, std::string reason) { return CheckResult{CheckError{k, step, std::move(reason)}}; };
  if (d.steps.empty()) return err(K::Malformed, 0, "no steps");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const Step& st = d.steps[i];
    if (!st.formula) return err(K::Malformed, k, "unelaborated step");
    const Formula& f = *st.formula;
    if (st.just.premise) {
      if (std::find(goal.premises.begin(), goal.premises.end(), f) == goal.premises.end())
        return err(K::BadCitation, k, print(f) + " is not a premise of the goal");
      continue;
    }
    const Rule* r = rs.find(st.just.rule);
    if (!r) return err(K::UnknownRule, k, "'" + st.just.rule + "'");
    std::vector<RuleDirection> store;
    const RuleDirection* dir = pick_direction(*r, st.just.backward, store);
    if (!dir) return err(K::BadCitation, k, "rule '" + r->name + "' has no backward direction");
    std::vector<Formula> cited;
    for (int c : st.just.cites) {
      if (c < 1 || c >= k) return err(K::BadCitation, k, "cited step " + std::to_string(c) + " does not precede");
      cited.push_back(*d.steps[c - 1].formula);
    }
    if (cited.size() != dir->premises.size())
      return err(K::BadCitation, k,
                 "rule '" + r->name + "' takes " + std::to_string(dir->premises.size()) + " premises, " +
                     std::to_string(cited.size()) + " cited");
    Substitution s = full_subst(*dir, st.just.subst);
    std::vector<Formula> inst;
    for (const auto& p : dir->premises) inst.push_back(substitute(p, s));
    auto a = inst, b = cited;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      std::string why = "premises instantiate to";
      for (const auto& x : inst) why += " " + print(x) + ";";
      return err(K::SubstitutionMismatch, k, why);
    }
    Formula concl = substitute(dir->conclusion, s);
    if (!(concl == f))
      return err(K::SubstitutionMismatch, k, "conclusion instantiates to " + print(concl) + ", step has " + print(f));
  }
  if (!(*d.steps.back().formula == goal.conclusion))
    return err(K::ConclusionMismatch, static_cast<int>(d.steps.size()),
               "last step is " + print(*d.steps.back().formula) + ", goal is " + print(goal.conclusion));
  return {};
}

CheckResult check_derivation(const RuleSet& rs, const Derivation& d) {
  if (!d.goal) return {CheckError{CheckError::Kind::Malformed, 0, "derivation has no goal"}};
  return check_derivation(rs, d, *d.goal);
}

Derivation elaborate(const RuleSet& rs, Derivation d) {
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    Step& st = d.steps[i];
    if (st.formula) continue;
    if (st.just.premise) throw std::invalid_argument("step " + std::to_string(i + 1) + ": premise hole");
    const Rule* r = rs.find(st.just.rule);
    if (!r) throw std::invalid_argument("step " + std::to_string(i + 1) + ": unknown rule '" + st.just.rule + "'");
    std::vector<RuleDirection> store;
    const RuleDirection* dir = pick_direction(*r, st.just.backward, store);
    if (!dir) throw std::invalid_argument("step " + std::to_string(i + 1) + ": no backward direction");
    st.formula = substitute(dir->conclusion, full_subst(*dir, st.just.subst));
  }
  return d;
}

Derivation substitute(const Derivation& d, const Substitution& s) {
  Derivation out = d;
  if (out.goal) {
    for (auto& p : out.goal->premises) p = substitute(p, s);
    out.goal->conclusion = substitute(out.goal->conclusion, s);
  }
  for (auto& st : out.steps) {
    if (st.formula) st.formula = substitute(*st.formula, s);
    if (!st.just.premise) st.just.subst = compose(st.just.subst, s);
  }
  return out;
}

}  // namespace hforge
