#include "hforge/calculi.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "hforge/transform.hpp"

namespace hforge {

namespace {

Formula mf(std::string_view s) { return parse_formula(s, ParseOptions{true}); }

Equation eq(std::string label, std::string_view lhs, std::string_view rhs) {
  return {std::move(label), mf(lhs), mf(rhs)};
}

Rule bi(std::string name, std::string_view a, std::string_view b, Provenance p) {
  return {std::move(name), {mf(a)}, mf(b), true, std::move(p)};
}

Rule uni(std::string name, std::vector<std::string_view> prem, std::string_view c, Provenance p) {
  Rule r{std::move(name), {}, mf(c), false, std::move(p)};
  for (auto s : prem) r.premises.push_back(mf(s));
  return r;
}

Provenance builtin_prov(std::string set) { return {Provenance::Kind::Builtin, -1, std::move(set)}; }

void require_single(const Rule& r) {
  if (r.premises.size() != 1) throw std::invalid_argument("rule '" + r.name + "' is not formula-to-formula");
}

}  // namespace

// ---- varieties and presets -------------------------------------------------

std::string Variety::name() const {
  switch (kind) {
    case Kind::DN: return "DN";
    case Kind::SDM: return "SDM";
    case Kind::DM: return "DM";
    case Kind::PL: return "PL";
    case Kind::O: return "O";
    case Kind::B: return "B";
    case Kind::Berman: return "Berman(" + std::to_string(m) + "," + std::to_string(n) + ")";
  }
  return "?";
}

Variety Variety::parse(std::string_view s) {
  Variety v;
  if (s == "DN") v.kind = Kind::DN;
  else if (s == "SDM") v.kind = Kind::SDM;
  else if (s == "DM") v.kind = Kind::DM;
  else if (s == "PL") v.kind = Kind::PL;
  else if (s == "O") v.kind = Kind::O;
  else if (s == "B") v.kind = Kind::B;
  else if (s.substr(0, 6) == "Berman") {
    std::string rest(s.substr(6));
    for (char& c : rest)
      if (c == '(' || c == ')' || c == ',' || c == ':') c = ' ';
    int m = -1, n = -1;
    if (std::sscanf(rest.c_str(), "%d %d", &m, &n) != 2 || m < 1 || n < 0)
      throw std::invalid_argument("invalid Berman indices in '" + std::string(s) + "'");
    v.kind = Kind::Berman;
    v.m = m;
    v.n = n;
  } else {
    throw std::invalid_argument("unknown variety '" + std::string(s) + "'");
  }
  return v;
}

namespace {

std::vector<Equation> lattice_eqs() {
  return {
      eq("L1_or", "x | y", "y | x"),
      eq("L1_and", "x & y", "y & x"),
      eq("L2_or", "x | (y | z)", "x | y | z"),
      eq("L2_and", "x & (y & z)", "x & y & z"),
      eq("L3_or", "x | x", "x"),
      eq("L3_and", "x & x", "x"),
      eq("L4_or", "x | x & y", "x"),
      eq("L4_and", "x & (x | y)", "x"),
      eq("L5_and", "x & 0", "0"),
      eq("L5_or", "x | 1", "1"),
      eq("L6", "x & (y | z)", "x & y | x & z"),
  };
}

std::vector<Equation> dn_eqs() {
  auto e = lattice_eqs();
  e.push_back(eq("N1", "~0", "1"));
  e.push_back(eq("N2", "~(x | y)", "~x & ~y"));
  return e;
}

std::vector<Equation> sdm_eqs() {
  auto e = dn_eqs();
  e.push_back(eq("SDM1", "~1", "0"));
  e.push_back(eq("SDM2", "~~(x & y)", "~~x & ~~y"));
  e.push_back(eq("SDM3", "~x", "~~~x"));
  return e;
}

}  // namespace

Presentation preset(const Variety& v) {
  Presentation p{v.name(), {}};
  using K = Variety::Kind;
  switch (v.kind) {
    case K::DN: p.equations = dn_eqs(); break;
    case K::SDM: p.equations = sdm_eqs(); break;
    case K::DM:
      p.equations = sdm_eqs();
      p.equations.push_back(eq("DM", "~~x", "x"));
      break;
    case K::PL:
      p.equations = sdm_eqs();
      p.equations.push_back(eq("PL", "x & ~(x & y)", "x & ~y"));
      break;
    case K::B:
      // Boolean algebras: DM and PL together with the complement laws.
      p.equations = sdm_eqs();
      p.equations.push_back(eq("DM", "~~x", "x"));
      p.equations.push_back(eq("PL", "x & ~(x & y)", "x & ~y"));
      p.equations.push_back(eq("B_and", "x & ~x", "0"));
      p.equations.push_back(eq("B_or", "x | ~x", "1"));
      break;
    case K::O:
    case K::Berman:
      p.equations = dn_eqs();
      p.equations.push_back(eq("SDM1", "~1", "0"));
      p.equations.push_back(eq("O", "~(x & y)", "~x | ~y"));
      if (v.kind == K::Berman) {
        Formula x = Formula::var("x");
        p.equations.push_back({"BER", neg_power(x, 2 * v.m + v.n), neg_power(x, v.n)});
      }
      break;
  }
  return p;
}

Presentation preset(std::string_view name) { return preset(Variety::parse(name)); }

// ---- rules from equations ----------------------------------------------------

RuleSet rules_from_equations(const std::vector<Equation>& eqs) {
  static const char* const kNames[] = {"p", "q", "r", "s", "u", "v", "w"};
  RuleSet rs("R_Eq");
  for (const auto& e : eqs) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    auto visit = [&](auto&& self, const Formula& f) -> void {
      switch (f.op()) {
        case Op::Var:
          if (seen.insert(f.name()).second) order.push_back(f.name());
          break;
        case Op::Neg: self(self, f.child()); break;
        case Op::And:
        case Op::Or:
          self(self, f.left());
          self(self, f.right());
          break;
        default: break;
      }
    };
    visit(visit, e.lhs);
    visit(visit, e.rhs);
    Substitution s;
    for (std::size_t i = 0; i < order.size(); ++i)
      s.emplace(order[i], Formula::var(i < 7 ? kNames[i] : "p" + std::to_string(i)));
    rs.add({e.label, {substitute(e.lhs, s)}, substitute(e.rhs, s), true, {Provenance::Kind::Equation, -1, {}}});
  }
  return rs;
}

// ---- closure layers ----------------------------------------------------------

namespace {

RuleSet next_layer(const RuleSet& rs, int k) {
  RuleSet out("R_" + std::to_string(k + 1));
  Formula q = Formula::var(fresh_q(k));
  Provenance prov{Provenance::Kind::Closure, k + 1, {}};
  std::string tag = std::to_string(k + 1);
  for (const auto& r : rs) {
    require_single(r);
    const Formula& a = r.premises.front();
    const Formula& b = r.conclusion;
    out.add({"or" + tag + "(" + r.name + ")", {Formula::disj(a, q)}, Formula::disj(b, q), r.bidirectional, prov});
    out.add({"and" + tag + "(" + r.name + ")", {Formula::conj(a, q)}, Formula::conj(b, q), r.bidirectional, prov});
    out.add({"neg" + tag + "(" + r.name + ")", {Formula::neg(b)}, Formula::neg(a), r.bidirectional, prov});
  }
  return out;
}

}  // namespace

RuleSet closure_layer(const RuleSet& rs, int n) {
  RuleSet cur;
  for (const auto& r : rs) {
    require_single(r);
    cur.add(r);
  }
  for (int k = 0; k < n; ++k) cur = next_layer(cur, k);
  return cur;
}

RuleSet closure_upto(const RuleSet& rs, int n) {
  RuleSet out(rs.name() + "_upto" + std::to_string(n));
  RuleSet cur;
  for (const auto& r : rs) {
    require_single(r);
    cur.add(r);
  }
  out.add_all(cur);
  for (int k = 0; k < n; ++k) {
    cur = next_layer(cur, k);
    out.add_all(cur);
  }
  return out;
}

// ---- builtin sets -------------------------------------------------------------

RuleSet builtin(Builtin b) {
  RuleSet rs;
  switch (b) {
    case Builtin::RC:
      rs.set_name("R_C");
      rs.add(uni("rC_and", {"p & q"}, "q & p", builtin_prov("R_C")));
      rs.add(uni("rC_or", {"p | q"}, "q | p", builtin_prov("R_C")));
      break;
    case Builtin::RF:
      rs.set_name("R_F");
      rs.add(uni("rF_top", {}, "1", builtin_prov("R_F")));
      rs.add(uni("rF_adj", {"p", "q"}, "p & q", builtin_prov("R_F")));
      rs.add(uni("rF_weak", {"p"}, "p | q", builtin_prov("R_F")));
      break;
    case Builtin::RBullet: {
      rs.set_name("R_bullet");
      auto pv = builtin_prov("R_bullet");
      rs.add(bi("r_or_bot", "p", "p | 0", pv));
      rs.add(bi("r_and_top", "p | r", "p & 1 | r", pv));
      rs.add(bi("r_neg_top", "~(p & 1) | r", "~p | r", pv));
      // Right-hand side reads (p & r) | (q & r); the displayed (p & r) | (p & r)
      // is not sound.
      rs.add(bi("r_dist", "(p | q) & r", "p & r | q & r", pv));
      rs.add(bi("r_ass", "p1 & p2 & p3 | q", "p1 & (p2 & p3) | q", pv));
      rs.add(bi("r_dm_neg_or", "~(p | q)", "~p & ~q", pv));
      break;
    }
    case Builtin::SBullet: {
      rs.set_name("S_bullet");
      auto pv = builtin_prov("S_bullet");
      rs.add(uni("r_and", {"~~(p & q) | r"}, "~~p | r", pv));
      rs.add(bi("r_neg", "~(~~p & q)", "~(p & q)", pv));
      rs.add(uni("r_neg_and", {"~(~p1 & p2)", "~(~(p3 & p4) & p2)"}, "~(~(p1 & p4) & p2)", pv));
      break;
    }
    case Builtin::RTop: {
      rs.set_name("R_top");
      auto pv = builtin_prov("R_top");
      rs.add(uni("r_WP", {"p & (~(p & q) | r)"}, "~q | r", pv));
      rs.add(uni("r_Q", {"p & (~(~q & r) | s)"}, "~(~(p & q) & r) | s", pv));
      break;
    }
  }
  return rs;
}

RuleSet builtin(std::string_view name) {
  if (name == "R_C") return builtin(Builtin::RC);
  if (name == "R_F") return builtin(Builtin::RF);
  if (name == "R_bullet") return builtin(Builtin::RBullet);
  if (name == "S_bullet") return builtin(Builtin::SBullet);
  if (name == "R_top") return builtin(Builtin::RTop);
  throw std::invalid_argument("unknown builtin rule set '" + std::string(name) + "'");
}

// ---- g-layers and s-layers ------------------------------------------------------

Rule g_rule(const Rule& r, int n) {
  require_single(r);
  Formula q = Formula::var(kFreshQ);
  Formula a = Formula::disj(g_n(n, r.premises.front()), q);
  Formula b = Formula::disj(g_n(n, r.conclusion), q);
  if (n % 2 == 1) std::swap(a, b);
  return {"g" + std::to_string(n) + "(" + r.name + ")", {a}, b, r.bidirectional,
          {Provenance::Kind::GLayer, n, r.name}};
}

RuleSet g_layer(const RuleSet& rs, int n) {
  RuleSet out("R_g" + std::to_string(n));
  for (const auto& r : rs) out.add(g_rule(r, n));
  return out;
}

RuleSet g_layers(const RuleSet& rs, int n) {
  RuleSet out(rs.name() + "_g" + std::to_string(n));
  out.add_all(rs);
  for (int k = 0; k <= n; ++k) out.add_all(g_layer(rs, k));
  return out;
}

Rule s_rule(const Rule& r, int k) {
  require_single(r);
  Formula t = Formula::var(kFreshT);
  Formula a = Formula::disj(neg_power(r.premises.front(), k), t);
  Formula b = Formula::disj(neg_power(r.conclusion, k), t);
  if (k % 2 == 1) std::swap(a, b);
  return {"s" + std::to_string(k) + "(" + r.name + ")", {a}, b, r.bidirectional,
          {Provenance::Kind::SLayer, k, r.name}};
}

// ---- calculi ---------------------------------------------------------------------

RuleSet sdm_calculus(const std::vector<Equation>& eqs, std::vector<std::string>* warnings) {
  RuleSet req = rules_from_equations(eqs);
  if (warnings) {
    for (const auto& r : rules_from_equations(sdm_eqs()))
      if (!req.covers(r.premises, r.conclusion))
        warnings->push_back("presentation lacks SDM equation " + r.name);
  }
  RuleSet out("sdm");
  out.add_all(g_layers(req, 2));
  out.add_all(builtin(Builtin::SBullet));
  out.add_all(builtin(Builtin::RBullet));
  out.add_all(builtin(Builtin::RF));
  return out;
}

RuleSet sdm_calculus_reduced(const std::vector<Equation>& eqs) {
  RuleSet req = rules_from_equations(eqs);
  RuleSet full = sdm_calculus(eqs);
  RuleSet out("sdm-reduced");
  for (const auto& r : full) {
    bool covered = true;
    for (const auto& d : directions(r))
      if (!req.covers(d.premises, d.conclusion)) covered = false;
    if (!covered) out.add(r);
  }
  return out;
}

Rule rule_in_and() {
  return uni("r_in", {"p", "q"}, "p & q", {Provenance::Kind::Builtin, -1, "ockham"});
}

Rule rule_wxc() { return uni("r_wxc", {"p & ~p"}, "~q", {}); }

RuleSet ockham_calculus(int m, int n) {
  if (m < 1 || n < 0) throw std::invalid_argument("ockham calculus needs m >= 1 and n >= 0");
  Variety v{Variety::Kind::Berman, m, n};
  RuleSet base = rules_from_equations(preset(v).equations);
  Provenance pv{Provenance::Kind::Builtin, -1, "ockham"};
  base.add(uni("r1_and", {"p & q"}, "p", pv));
  base.add(uni("r2_and", {"p & q"}, "q", pv));
  RuleSet out("ockham(" + std::to_string(m) + "," + std::to_string(n) + ")");
  out.add_all(base);
  for (int k = 0; k <= 2 * m + n; ++k)
    for (const auto& r : base) out.add(s_rule(r, k));
  out.add(rule_in_and());
  out.add(uni("rF_top", {}, "1", builtin_prov("R_F")));
  return out;
}

RuleSet context_rules() {
  RuleSet rs("ctx");
  Provenance pv{Provenance::Kind::Auxiliary, -1, "S_bullet"};
  rs.add(uni("x_and", {"~(~(p & q) & s) & t | r"}, "~(~p & s) & t | r", pv));
  rs.add(bi("x_neg", "~(~~p & q) & t | r", "~(p & q) & t | r", pv));
  rs.add(bi("x_ass", "~(p & q & s) & t | r", "~(p & (q & s)) & t | r", pv));
  rs.add(uni("x_neg_and", {"~(~p & q) & t | r", "~(~(s & u) & q) & t | r"}, "~(~(p & u) & q) & t | r", pv));
  return rs;
}

std::vector<Equation> equations_from_rules(const RuleSet& rs) {
  std::vector<Equation> out;
  for (const auto& r : rs) {
    for (const auto& d : directions(r)) {
      std::string label = r.name + (d.backward ? ".bwd" : "");
      if (d.premises.empty()) {
        out.push_back({label, d.conclusion, Formula::top()});
      } else {
        Formula g = conj_all(d.premises);
        out.push_back({label, Formula::conj(g, d.conclusion), g});
      }
    }
  }
  return out;
}

// ---- identifiers -------------------------------------------------------------------

RuleSet resolve_ruleset(std::string_view id) {
  auto slash = id.find('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("rule set id needs '<variety>/<target>'");
  Variety v = Variety::parse(id.substr(0, slash));
  std::vector<std::string> parts;
  std::string rest(id.substr(slash + 1));
  for (std::size_t start = 0;;) {
    auto plus = rest.find('+', start);
    parts.push_back(rest.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  const auto eqs = preset(v).equations;
  const std::string& target = parts.front();
  RuleSet out;
  if (target == "sdm") {
    out = sdm_calculus(eqs);
  } else if (target == "sdm-reduced") {
    out = sdm_calculus_reduced(eqs);
  } else if (target == "eq") {
    out = rules_from_equations(eqs);
  } else if (target.rfind("omega:", 0) == 0) {
    out = closure_upto(rules_from_equations(eqs), std::stoi(target.substr(6)));
    out.add_all(builtin(Builtin::RF));
  } else if (target == "ockham") {
    if (v.kind != Variety::Kind::Berman) throw std::invalid_argument("ockham target needs a Berman variety");
    out = ockham_calculus(v.m, v.n);
  } else if (target == "assertional") {
    out = sdm_calculus(eqs);
    out.add_all(builtin(Builtin::RTop));
  } else {
    throw std::invalid_argument("unknown target '" + target + "'");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& ext = parts[i];
    if (ext == "ctx") {
      out.add_all(context_rules());
    } else if (ext == "wxc") {
      out.add(rule_wxc());
    } else if (ext == "top") {
      out.add_all(builtin(Builtin::RTop));
    } else if (ext == "pl") {
      RuleSet rp = rules_from_equations({eq("PL", "x & ~(x & y)", "x & ~y")});
      for (int k = 0; k <= 2; ++k) out.add_all(g_layer(rp, k));
    } else if (ext.size() > 1 && ext[0] == 'g') {
      RuleSet req = rules_from_equations(eqs);
      int top = std::stoi(ext.substr(1));
      for (int k = 0; k <= top; ++k) out.add_all(g_layer(req, k));
    } else {
      throw std::invalid_argument("unknown rule set extension '" + ext + "'");
    }
  }
  out.set_name(std::string(id));
  return out;
}

}  // namespace hforge
