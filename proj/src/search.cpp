#include "hforge/search.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hforge/compiled.hpp"

namespace hforge {

namespace {

using Code = std::vector<std::uint8_t>;

// Minimal leq code over all linear extensions; also returns the labeling
// (label -> original element) that attains it.
std::pair<Code, std::vector<std::vector<int>>> min_code(int n, const std::vector<std::uint8_t>& leq) {
  Code best;
  std::vector<std::vector<int>> argbest;
  std::vector<int> order;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(order.size()) == n) {
      Code c(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) c[a * n + b] = leq[order[a] * n + order[b]];
      if (best.empty() || c < best) {
        best = c;
        argbest.clear();
      }
      if (c == best) argbest.push_back(order);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      bool ready = true;
      for (int y = 0; y < n && ready; ++y)
        if (y != x && !used[y] && leq[y * n + x]) ready = false;
      if (!ready) continue;
      used[x] = true;
      order.push_back(x);
      self(self);
      order.pop_back();
      used[x] = false;
    }
  };
  rec(rec);
  return {best, argbest};
}

Lattice lattice_from_leq(int n, const Code& leq) {
  Lattice l;
  l.size = n;
  l.code = leq;
  l.meet.resize(n * n);
  l.join.resize(n * n);
  auto le = [&](int a, int b) { return leq[a * n + b] != 0; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int m = -1, j = -1;
      for (int z = 0; z < n; ++z) {
        if (le(z, x) && le(z, y) && (m < 0 || le(m, z))) m = z;
        if (le(x, z) && le(y, z) && (j < 0 || le(z, j))) j = z;
      }
      l.meet[x * n + y] = static_cast<Elem>(m);
      l.join[x * n + y] = static_cast<Elem>(j);
    }
  return l;
}

FiniteAlgebra algebra_of(const Lattice& l, const std::vector<Elem>& neg) {
  FiniteAlgebra a;
  a.size = l.size;
  a.meet = l.meet;
  a.join = l.join;
  a.neg = neg;
  a.bot = 0;
  a.top = static_cast<Elem>(l.size - 1);
  return a;
}

}  // namespace

std::vector<Lattice> enumerate_lattices(int max_size, int min_size) {
  std::map<std::pair<int, Code>, Lattice> found;
  for (int k = 0; k < max_size; ++k) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      // strict order rel[i][j] (i < j), must be transitive
      std::vector<std::uint8_t> rel(k * k, 0);
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1) rel[pairs[b].first * k + pairs[b].second] = 1;
      bool trans = true;
      for (int i = 0; i < k && trans; ++i)
        for (int j = i + 1; j < k && trans; ++j)
          for (int m = j + 1; m < k && trans; ++m)
            if (rel[i * k + j] && rel[j * k + m] && !rel[i * k + m]) trans = false;
      if (!trans) continue;
      // down-sets of the poset form the distributive lattice
      std::vector<std::uint32_t> downs;
      for (std::uint32_t s = 0; s < (1u << k); ++s) {
        bool closed = true;
        for (int x = 0; x < k && closed; ++x)
          if (s >> x & 1)
            for (int y = 0; y < x; ++y)
              if (rel[y * k + x] && !(s >> y & 1)) closed = false;
        if (closed) downs.push_back(s);
        if (static_cast<int>(downs.size()) > max_size) break;
      }
      int n = static_cast<int>(downs.size());
      if (n > max_size || n < min_size) continue;
      std::vector<std::uint8_t> leq(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) leq[a * n + b] = (downs[a] & ~downs[b]) == 0;
      Code c = min_code(n, leq).first;
      found.try_emplace({n, c}, lattice_from_leq(n, c));
    }
  }
  std::vector<Lattice> out;
  for (auto& [key, l] : found) out.push_back(std::move(l));
  return out;
}

std::vector<std::vector<Elem>> automorphisms(const Lattice& l) {
  int n = l.size;
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> s(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.push_back(s);
      return;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z)
        if (l.code[z * n + x] != l.code[s[z] * n + y] || l.code[x * n + z] != l.code[y * n + s[z]]) ok = false;
      if (!ok) continue;
      used[y] = true;
      s[x] = static_cast<Elem>(y);
      self(self, x + 1);
      used[y] = false;
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

// Negations on l satisfying N1, N2 and extra equations, minimal in their
// automorphism orbit, in lexicographic order.
std::vector<FiniteAlgebra> negations(const Lattice& l, const std::vector<Equation>& extra) {
  int n = l.size;
  auto autos = automorphisms(l);
  std::vector<FiniteAlgebra> out;
  std::vector<Elem> neg(n, 0);
  auto J = [&](int a, int b) { return l.join[a * n + b]; };
  auto M = [&](int a, int b) { return l.meet[a * n + b]; };
  std::vector<std::pair<Program, Program>> progs;
  std::vector<std::vector<std::string>> names;
  for (const auto& e : extra) {
    std::set<std::string> vs;
    collect_vars(e.lhs, vs);
    collect_vars(e.rhs, vs);
    names.emplace_back(vs.begin(), vs.end());
    progs.emplace_back(Program(e.lhs, names.back()), Program(e.rhs, names.back()));
  }
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      FiniteAlgebra a = algebra_of(l, neg);
      for (std::size_t i = 0; i < progs.size(); ++i) {
        ValuationCursor cur(static_cast<int>(names[i].size()), n);
        do {
          if (progs[i].first.run(a, cur.data()) != progs[i].second.run(a, cur.data())) return;
        } while (cur.next());
      }
      for (const auto& s : autos) {
        std::vector<Elem> conj(n);
        for (int y = 0; y < n; ++y) conj[s[y]] = s[neg[y]];
        if (conj < neg) return;
      }
      out.push_back(std::move(a));
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (x == 0 && v != n - 1) continue;  // N1
      neg[x] = static_cast<Elem>(v);
      bool ok = true;
      for (int y = 0; y <= x && ok; ++y)
        for (int z = 0; z <= x && ok; ++z) {
          int j = J(y, z);
          if (j > x || (y != x && z != x && j != x)) continue;
          if (neg[j] != M(neg[y], neg[z])) ok = false;  // N2
        }
      if (ok) self(self, x + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Equation> extra_equations(const Variety& v) {
  auto eqs = preset(v).equations;
  auto dn = preset(Variety{Variety::Kind::DN}).equations.size();
  return {eqs.begin() + static_cast<long>(dn), eqs.end()};
}

void check_spec(const EnumerationSpec& spec) {
  if (spec.max_size > spec.cap) throw std::invalid_argument("enumeration size exceeds cap");
  if (spec.max_size < 1) throw std::invalid_argument("enumeration size must be positive");
}

}  // namespace

std::vector<FiniteAlgebra> enumerate_algebras_serial(const EnumerationSpec& spec) {
  check_spec(spec);
  auto lats = enumerate_lattices(spec.max_size, spec.include_trivial ? 1 : 2);
  auto extra = extra_equations(spec.cls);
  std::vector<FiniteAlgebra> out;
  for (const auto& l : lats) {
    auto part = negations(l, extra);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<FiniteAlgebra> enumerate_algebras(const EnumerationSpec& spec) {
  check_spec(spec);
  auto lats = enumerate_lattices(spec.max_size, spec.include_trivial ? 1 : 2);
  auto extra = extra_equations(spec.cls);
  std::vector<std::vector<FiniteAlgebra>> parts(lats.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < static_cast<int>(lats.size()); ++i) parts[i] = negations(lats[i], extra);
  std::vector<FiniteAlgebra> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

FiniteAlgebra canonical_form(const FiniteAlgebra& a) {
  int n = a.size;
  std::vector<std::uint8_t> leq(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) leq[x * n + y] = a.leq(x, y);
  auto [code, labelings] = min_code(n, leq);
  Lattice l = lattice_from_leq(n, code);
  std::vector<Elem> best;
  for (const auto& order : labelings) {
    std::vector<Elem> label(n);
    for (int i = 0; i < n; ++i) label[order[i]] = static_cast<Elem>(i);
    std::vector<Elem> neg(n);
    for (int x = 0; x < n; ++x) neg[label[x]] = label[a.n(x)];
    if (best.empty() || neg < best) best = neg;
  }
  return algebra_of(l, best);
}

CountermodelResult find_countermodel(const Rule& target, const EnumerationSpec& spec, const SemanticsMode& mode) {
  auto algs = enumerate_algebras(spec);
  Verdict v = rule_sound(target, algs, mode);
  CountermodelResult r;
  r.bound = spec.max_size;
  if (!v.ok) {
    r.found = true;
    r.witness = *v.witness;
  }
  return r;
}

CountermodelResult find_countermodel(const Consecution& target, const EnumerationSpec& spec,
                                     const SemanticsMode& mode) {
  auto algs = enumerate_algebras(spec);
  Verdict v = consecution_sound(target, algs, mode);
  CountermodelResult r;
  r.bound = spec.max_size;
  if (!v.ok) {
    r.found = true;
    r.witness = *v.witness;
    r.witness.target = print_consecution(target);
  }
  return r;
}

}  // namespace hforge
