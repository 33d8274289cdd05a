#include "hforge/semantics.hpp"

#include <omp.h>

#include <stdexcept>

#include "hforge/compiled.hpp"

namespace hforge {

// ---- consecutions ------------------------------------------------------------------

Consecution parse_consecution(std::string_view text, ParseOptions opts) {
  auto turn = text.find("|-");
  if (turn == std::string_view::npos) throw ParseError("consecution needs '|-'", 0);
  Consecution c;
  std::string_view lhs = text.substr(0, turn);
  auto blank = [](std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; };
  if (!blank(lhs)) {
    for (;;) {
      auto comma = lhs.find(',');
      c.premises.push_back(parse_formula(lhs.substr(0, comma), opts));
      if (comma == std::string_view::npos) break;
      lhs = lhs.substr(comma + 1);
    }
  }
  c.conclusion = parse_formula(text.substr(turn + 2), opts);
  return c;
}

std::string print_consecution(const Consecution& c) {
  std::string out;
  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    if (i) out += ", ";
    out += print(c.premises[i]);
  }
  if (!c.premises.empty()) out += ' ';
  return out + "|- " + print(c.conclusion);
}

Consecution consecution_of(const RuleDirection& d) { return {d.premises, d.conclusion}; }

std::string SemanticsMode::name() const {
  switch (kind) {
    case Kind::Filter: return "filter";
    case Kind::Assertional: return "assertional";
    case Kind::FixedMatrix: return "fixed" + element_set_str(designated);
  }
  return "?";
}

SemanticsMode SemanticsMode::parse(std::string_view s) {
  if (s == "filter") return filter();
  if (s == "assertional") return assertional();
  throw std::invalid_argument("unknown semantics mode '" + std::string(s) + "'");
}

// ---- kernel ----------------------------------------------------------------------------

namespace {

struct Compiled {
  std::vector<std::string> names;
  std::vector<Program> premises;
  Program conclusion;
};

Compiled compile(const Consecution& c) {
  std::set<std::string> vs;
  for (const auto& p : c.premises) collect_vars(p, vs);
  collect_vars(c.conclusion, vs);
  Compiled out;
  out.names.assign(vs.begin(), vs.end());
  for (const auto& p : c.premises) out.premises.emplace_back(p, out.names);
  out.conclusion = Program(c.conclusion, out.names);
  return out;
}

struct Failure {
  int set_index = -1;
  std::vector<Elem> vals;
};

// Earliest failing designated set (by index), with its earliest valuation.
std::optional<Failure> first_failure(const FiniteAlgebra& a, const std::vector<ElemSet>& sets, const Compiled& c) {
  if (sets.empty()) return std::nullopt;
  int limit = static_cast<int>(sets.size());  // only sets below limit can still improve
  std::optional<Failure> best;
  ValuationCursor cur(static_cast<int>(c.names.size()), a.size);
  do {
    ElemSet pm = 0;
    for (const auto& p : c.premises) pm |= ElemSet{1} << p.run(a, cur.data());
    Elem v = c.conclusion.run(a, cur.data());
    for (int i = 0; i < limit; ++i) {
      ElemSet d = sets[i];
      if ((pm & ~d) == 0 && !(d >> v & 1)) {
        best = Failure{i, cur.values()};
        limit = i;
        break;
      }
    }
    if (limit == 0) break;
  } while (cur.next());
  return best;
}

Witness make_witness(const FiniteAlgebra& a, int idx, ElemSet d, const Compiled& c, const Failure& f) {
  Witness w;
  w.algebra = a;
  w.algebra_index = idx;
  w.designated = d;
  w.valuation = to_valuation(c.names, f.vals);
  return w;
}

ElemSet principal_filter(const FiniteAlgebra& a, Elem x) {
  ElemSet s = 0;
  for (int y = 0; y < a.size; ++y)
    if (a.leq(x, y)) s |= ElemSet{1} << y;
  return s;
}

}  // namespace

std::vector<ElemSet> designated_sets(const FiniteAlgebra& a, const SemanticsMode& mode) {
  switch (mode.kind) {
    case SemanticsMode::Kind::Filter: return filters(a);
    case SemanticsMode::Kind::Assertional: return {ElemSet{1} << a.top};
    case SemanticsMode::Kind::FixedMatrix: return {mode.designated & ((ElemSet{1} << a.size) - 1)};
  }
  return {};
}

Verdict matrix_entails(const Matrix& m, const Consecution& c) {
  Compiled cc = compile(c);
  auto f = first_failure(m.alg, {m.designated}, cc);
  if (!f) return {};
  return {false, make_witness(m.alg, 0, m.designated, cc, *f)};
}

Verdict order_entails(const std::vector<FiniteAlgebra>& algebras, const Consecution& c, bool check_class) {
  Formula lhs = conj_all(c.premises);
  Compiled cc = compile({{lhs}, c.conclusion});
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    const auto& a = algebras[i];
    if (check_class && !in_variety(a, Variety{Variety::Kind::DN}))
      throw std::invalid_argument("order_entails needs DN algebras");
    ValuationCursor cur(static_cast<int>(cc.names.size()), a.size);
    do {
      Elem g = cc.premises[0].run(a, cur.data());
      Elem v = cc.conclusion.run(a, cur.data());
      if (!a.leq(g, v)) {
        Failure f{0, cur.values()};
        return {false, make_witness(a, static_cast<int>(i), principal_filter(a, g), cc, f)};
      }
    } while (cur.next());
  }
  return {};
}

Verdict assertional_entails(const std::vector<FiniteAlgebra>& algebras, const Consecution& c) {
  return consecution_sound(c, algebras, SemanticsMode::assertional());
}

Verdict consecution_sound_serial(const Consecution& c, const std::vector<FiniteAlgebra>& algebras,
                                 const SemanticsMode& mode) {
  Compiled cc = compile(c);
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    auto sets = designated_sets(algebras[i], mode);
    if (auto f = first_failure(algebras[i], sets, cc))
      return {false, make_witness(algebras[i], static_cast<int>(i), sets[f->set_index], cc, *f)};
  }
  return {};
}

Verdict consecution_sound(const Consecution& c, const std::vector<FiniteAlgebra>& algebras,
                          const SemanticsMode& mode) {
  Compiled cc = compile(c);
  const int n = static_cast<int>(algebras.size());
  std::vector<std::optional<Failure>> found(n);
  std::vector<std::vector<ElemSet>> sets(n);
  int first = n;  // smallest failing index seen so far; later algebras may be skipped
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    int seen;
#pragma omp atomic read
    seen = first;
    if (i > seen) continue;
    sets[i] = designated_sets(algebras[i], mode);
    found[i] = first_failure(algebras[i], sets[i], cc);
    if (found[i]) {
#pragma omp critical(hforge_first)
      first = std::min(first, i);
    }
  }
  for (int i = 0; i < n; ++i)
    if (found[i]) return {false, make_witness(algebras[i], i, sets[i][found[i]->set_index], cc, *found[i])};
  return {};
}

namespace {

template <typename F>
Verdict per_direction(const Rule& r, F&& check) {
  for (const auto& d : directions(r)) {
    Verdict v = check(consecution_of(d));
    if (!v.ok) {
      v.witness->target = r.name;
      v.witness->backward = d.backward;
      return v;
    }
  }
  return {};
}

}  // namespace

Verdict rule_sound(const Rule& r, const std::vector<FiniteAlgebra>& algebras, const SemanticsMode& mode) {
  return per_direction(r, [&](const Consecution& c) { return consecution_sound(c, algebras, mode); });
}

Verdict rule_sound_serial(const Rule& r, const std::vector<FiniteAlgebra>& algebras, const SemanticsMode& mode) {
  return per_direction(r, [&](const Consecution& c) { return consecution_sound_serial(c, algebras, mode); });
}

}  // namespace hforge

namespace hforge {

bool witness_refutes(const Witness& w, const Consecution& c) {
  for (const auto& v : vars(conj_all(c.premises)))
    if (!w.valuation.count(v)) return false;
  for (const auto& v : vars(c.conclusion))
    if (!w.valuation.count(v)) return false;
  for (const auto& p : c.premises)
    if (!(w.designated >> eval(w.algebra, w.valuation, p) & 1)) return false;
  return !(w.designated >> eval(w.algebra, w.valuation, c.conclusion) & 1);
}

bool witness_refutes(const Witness& w, const Rule& r) {
  for (const auto& d : directions(r))
    if (d.backward == w.backward) return witness_refutes(w, consecution_of(d));
  return false;
}

}  // namespace hforge
