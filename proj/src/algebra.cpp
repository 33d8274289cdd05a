#include "hforge/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "hforge/compiled.hpp"

namespace hforge {

// ---- compiled evaluation --------------------------------------------------------

Program::Program(const Formula& f, const std::vector<std::string>& var_order) {
  int depth = 0;
  int max_depth = 0;
  auto emit = [&](auto&& self, const Formula& g) -> void {
    switch (g.op()) {
      case Op::Var: {
        auto it = std::find(var_order.begin(), var_order.end(), g.name());
        if (it == var_order.end()) throw std::invalid_argument("unbound variable " + g.name());
        code_.push_back({Op::Var, static_cast<std::uint8_t>(it - var_order.begin())});
        max_depth = std::max(max_depth, ++depth);
        break;
      }
      case Op::Bot:
      case Op::Top:
        code_.push_back({g.op(), 0});
        max_depth = std::max(max_depth, ++depth);
        break;
      case Op::Neg:
        self(self, g.child());
        code_.push_back({Op::Neg, 0});
        break;
      case Op::And:
      case Op::Or:
        self(self, g.left());
        self(self, g.right());
        code_.push_back({g.op(), 0});
        --depth;
        break;
    }
  };
  emit(emit, f);
  if (max_depth > kStack) throw std::invalid_argument("formula too deep to compile");
}

Valuation to_valuation(const std::vector<std::string>& names, const std::vector<Elem>& vals) {
  Valuation v;
  for (std::size_t i = 0; i < names.size(); ++i) v.emplace(names[i], vals[i]);
  return v;
}

// ---- tables --------------------------------------------------------------------------

void check_tables(const FiniteAlgebra& a) {
  if (a.size < 1 || a.size > kMaxCarrier) throw std::invalid_argument("carrier size out of range");
  auto n = static_cast<std::size_t>(a.size);
  if (a.meet.size() != n * n || a.join.size() != n * n || a.neg.size() != n)
    throw std::invalid_argument("table dimensions do not match size");
  auto in_range = [&](Elem e) { return e < a.size; };
  if (!std::all_of(a.meet.begin(), a.meet.end(), in_range) || !std::all_of(a.join.begin(), a.join.end(), in_range) ||
      !std::all_of(a.neg.begin(), a.neg.end(), in_range) || !in_range(a.bot) || !in_range(a.top))
    throw std::invalid_argument("table entry out of range");
}

Elem eval(const FiniteAlgebra& a, const Valuation& v, const Formula& f) {
  switch (f.op()) {
    case Op::Var: {
      auto it = v.find(f.name());
      if (it == v.end()) throw std::invalid_argument("valuation misses variable " + f.name());
      return it->second;
    }
    case Op::Bot: return a.bot;
    case Op::Top: return a.top;
    case Op::Neg: return a.n(eval(a, v, f.child()));
    case Op::And: return a.m(eval(a, v, f.left()), eval(a, v, f.right()));
    case Op::Or: return a.j(eval(a, v, f.left()), eval(a, v, f.right()));
  }
  return a.bot;
}

HoldsResult holds(const FiniteAlgebra& a, const Equation& e) {
  std::set<std::string> vs;
  collect_vars(e.lhs, vs);
  collect_vars(e.rhs, vs);
  std::vector<std::string> names(vs.begin(), vs.end());
  Program l(e.lhs, names), r(e.rhs, names);
  ValuationCursor cur(static_cast<int>(names.size()), a.size);
  do {
    if (l.run(a, cur.data()) != r.run(a, cur.data())) return {false, to_valuation(names, cur.values())};
  } while (cur.next());
  return {};
}

Diagnostics validate(const FiniteAlgebra& a, const Variety& v) {
  check_tables(a);
  Diagnostics d;
  for (const auto& e : preset(v).equations) {
    auto h = holds(a, e);
    d.checks.push_back({e.label, h.ok, h.witness});
    d.ok = d.ok && h.ok;
  }
  return d;
}

bool in_variety(const FiniteAlgebra& a, const Variety& v) {
  check_tables(a);
  for (const auto& e : preset(v).equations)
    if (!holds(a, e).ok) return false;
  return true;
}

// ---- filters ----------------------------------------------------------------------------

bool is_filter(const FiniteAlgebra& a, ElemSet s) {
  if (s == 0) return false;
  for (int x = 0; x < a.size; ++x) {
    if (!(s >> x & 1)) continue;
    for (int y = 0; y < a.size; ++y) {
      if (a.leq(x, y) && !(s >> y & 1)) return false;
      if ((s >> y & 1) && !(s >> a.m(x, y) & 1)) return false;
    }
  }
  return true;
}

std::vector<ElemSet> filters(const FiniteAlgebra& a) {
  std::vector<ElemSet> out;
  for (ElemSet s = 1; s < (ElemSet{1} << a.size); ++s)
    if (is_filter(a, s)) out.push_back(s);
  return out;
}

std::vector<Elem> members(ElemSet s) {
  std::vector<Elem> out;
  for (int i = 0; i < kMaxCarrier; ++i)
    if (s >> i & 1) out.push_back(static_cast<Elem>(i));
  return out;
}

std::string element_set_str(ElemSet s) {
  std::string out = "{";
  bool first = true;
  for (Elem e : members(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

// ---- congruences ---------------------------------------------------------------------------

Congruence identity_congruence(int size) {
  Congruence c(size);
  for (int i = 0; i < size; ++i) c[i] = i;
  return c;
}

Congruence total_congruence(int size) { return Congruence(size, 0); }

Congruence normalize(const Congruence& c) {
  std::map<int, int> relabel;
  Congruence out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto [it, _] = relabel.emplace(c[i], static_cast<int>(relabel.size()));
    out[i] = it->second;
  }
  return out;
}

bool is_identity(const Congruence& c) {
  auto n = normalize(c);
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != static_cast<int>(i)) return false;
  return true;
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& c) {
  for (int x = 0; x < a.size; ++x) {
    for (int y = x + 1; y < a.size; ++y) {
      if (c[x] != c[y]) continue;
      if (c[a.n(x)] != c[a.n(y)]) return false;
      for (int z = 0; z < a.size; ++z) {
        if (c[a.m(x, z)] != c[a.m(y, z)] || c[a.j(x, z)] != c[a.j(y, z)]) return false;
      }
    }
  }
  return true;
}

std::vector<Congruence> congruences(const FiniteAlgebra& a, int bound) {
  if (a.size > bound) throw std::invalid_argument("carrier exceeds congruence bound");
  std::vector<Congruence> out;
  Congruence c(a.size, 0);
  // restricted growth strings: c[i] <= 1 + max(c[0..i-1])
  auto rec = [&](auto&& self, int i, int maxl) -> void {
    if (i == a.size) {
      if (is_congruence(a, c)) out.push_back(c);
      return;
    }
    for (int l = 0; l <= maxl + 1; ++l) {
      c[i] = l;
      self(self, i + 1, std::max(maxl, l));
    }
  };
  c[0] = 0;
  rec(rec, 1, 0);
  return out;
}

namespace {

bool compatible(const Congruence& c, ElemSet d) {
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      if (c[x] == c[y] && (d >> x & 1) != (d >> y & 1)) return false;
  return true;
}

// Join of two equivalences: transitive closure of the union.
Congruence join(const Congruence& a, const Congruence& b) {
  int n = static_cast<int>(a.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a[x] == a[y] || b[x] == b[y]) parent[find(x)] = find(y);
  Congruence out(n);
  for (int x = 0; x < n; ++x) out[x] = find(x);
  return normalize(out);
}

}  // namespace

Congruence leibniz(const Matrix& m, int bound) {
  Congruence acc = identity_congruence(m.alg.size);
  for (const auto& c : congruences(m.alg, bound))
    if (compatible(c, m.designated)) acc = join(acc, c);
  return acc;
}

Congruence leibniz_sdm(const Matrix& m) {
  const auto& a = m.alg;
  if (!in_variety(a, Variety{Variety::Kind::SDM}))
    throw std::invalid_argument("leibniz_sdm needs an SDM algebra");
  if (!is_filter(a, m.designated)) throw std::invalid_argument("leibniz_sdm needs a lattice filter");
  auto in = [&](Elem e) { return (m.designated >> e & 1) != 0; };
  auto related = [&](Elem x, Elem y) {
    for (int c1 = 0; c1 < a.size; ++c1) {
      if (in(a.j(x, c1)) != in(a.j(y, c1))) return false;
      for (int c2 = 0; c2 < a.size; ++c2) {
        if (in(a.j(a.n(a.m(x, c2)), c1)) != in(a.j(a.n(a.m(y, c2)), c1))) return false;
        for (int c3 = 0; c3 < a.size; ++c3) {
          Elem lx = a.j(a.n(a.m(a.n(a.m(x, c3)), c2)), c1);
          Elem ly = a.j(a.n(a.m(a.n(a.m(y, c3)), c2)), c1);
          if (in(lx) != in(ly)) return false;
        }
      }
    }
    return true;
  };
  Congruence c(a.size);
  for (int x = 0; x < a.size; ++x) {
    c[x] = x;
    for (int y = 0; y < x; ++y)
      if (related(x, y)) {
        c[x] = c[y];
        break;
      }
  }
  return normalize(c);
}

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& c0) {
  Congruence c = normalize(c0);
  if (static_cast<int>(c.size()) != a.size || !is_congruence(a, c))
    throw std::invalid_argument("partition is not a congruence");
  int k = *std::max_element(c.begin(), c.end()) + 1;
  std::vector<Elem> rep(k);
  for (int x = a.size - 1; x >= 0; --x) rep[c[x]] = static_cast<Elem>(x);
  FiniteAlgebra q;
  q.size = k;
  q.meet.resize(k * k);
  q.join.resize(k * k);
  q.neg.resize(k);
  for (int x = 0; x < k; ++x) {
    q.neg[x] = static_cast<Elem>(c[a.n(rep[x])]);
    for (int y = 0; y < k; ++y) {
      q.meet[x * k + y] = static_cast<Elem>(c[a.m(rep[x], rep[y])]);
      q.join[x * k + y] = static_cast<Elem>(c[a.j(rep[x], rep[y])]);
    }
  }
  q.bot = static_cast<Elem>(c[a.bot]);
  q.top = static_cast<Elem>(c[a.top]);
  return q;
}

FiniteAlgebra star_algebra(const FiniteAlgebra& a) {
  if (!in_variety(a, Variety{Variety::Kind::SDM})) throw std::invalid_argument("star_algebra needs an SDM algebra");
  std::vector<Elem> image(a.neg.begin(), a.neg.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::vector<int> idx(a.size, -1);
  for (std::size_t i = 0; i < image.size(); ++i) idx[image[i]] = static_cast<int>(i);
  auto at = [&](Elem e) {
    if (idx[e] < 0) throw std::logic_error("image of negation not closed");
    return static_cast<Elem>(idx[e]);
  };
  int k = static_cast<int>(image.size());
  FiniteAlgebra s;
  s.size = k;
  s.meet.resize(k * k);
  s.join.resize(k * k);
  s.neg.resize(k);
  for (int x = 0; x < k; ++x) {
    s.neg[x] = at(a.n(image[x]));
    for (int y = 0; y < k; ++y) {
      s.meet[x * k + y] = at(a.m(image[x], image[y]));
      s.join[x * k + y] = at(a.n(a.n(a.j(image[x], image[y]))));
    }
  }
  s.bot = at(a.bot);
  s.top = at(a.top);
  return s;
}

// ---- named algebras ---------------------------------------------------------------------

FiniteAlgebra chain(int size, const std::vector<Elem>& neg) {
  FiniteAlgebra a;
  a.size = size;
  a.meet.resize(size * size);
  a.join.resize(size * size);
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      a.meet[x * size + y] = static_cast<Elem>(std::min(x, y));
      a.join[x * size + y] = static_cast<Elem>(std::max(x, y));
    }
  a.neg = neg;
  a.bot = 0;
  a.top = static_cast<Elem>(size - 1);
  check_tables(a);
  return a;
}

FiniteAlgebra boolean2() { return chain(2, {1, 0}); }

FiniteAlgebra belnap4() {
  FiniteAlgebra a;
  a.size = 4;
  a.meet = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3};
  a.join = {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3};
  a.neg = {3, 1, 2, 0};
  a.bot = 0;
  a.top = 3;
  return a;
}

}  // namespace hforge
