#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "hforge/calculi.hpp"
#include "hforge/search.hpp"
#include "hforge/transform.hpp"
#include "support.hpp"

using namespace hforge;

namespace {

// Brute force over labeled posets, independent of the library enumerator.
struct RawLattice {
  int n;
  std::vector<std::vector<bool>> le;
  std::vector<std::vector<int>> meet, join;
};

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<bool> relabel(const std::vector<std::vector<bool>>& le, const std::vector<int>& p) {
  int n = static_cast<int>(le.size());
  std::vector<bool> out(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out[p[x] * n + p[y]] = le[x][y];
  return out;
}

std::optional<RawLattice> as_distributive_lattice(const std::vector<std::vector<bool>>& le) {
  int n = static_cast<int>(le.size());
  RawLattice l{n, le, std::vector<std::vector<int>>(n, std::vector<int>(n)), {}};
  l.join = l.meet;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int glb = -1, lub = -1;
      for (int z = 0; z < n; ++z) {
        if (le[z][x] && le[z][y] && (glb < 0 || le[glb][z])) glb = z;
        if (le[x][z] && le[y][z] && (lub < 0 || le[z][lub])) lub = z;
      }
      if (glb < 0 || lub < 0) return std::nullopt;
      for (int z = 0; z < n; ++z) {
        if (le[z][x] && le[z][y] && !le[z][glb]) return std::nullopt;
        if (le[x][z] && le[y][z] && !le[lub][z]) return std::nullopt;
      }
      l.meet[x][y] = glb;
      l.join[x][y] = lub;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (l.meet[x][l.join[y][z]] != l.join[l.meet[x][y]][l.meet[x][z]]) return std::nullopt;
  return l;
}

// One representative per isomorphism class of distributive lattices of size n.
std::vector<RawLattice> oracle_lattices(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  std::set<std::vector<bool>> seen;
  std::vector<RawLattice> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pairs.size()) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (le[a][b] && le[b][c] && !le[a][c]) return;
      auto l = as_distributive_lattice(le);
      if (!l) return;
      std::vector<bool> best;
      auto p = identity_perm(n);
      do {
        auto code = relabel(le, p);
        if (best.empty() || code < best) best = code;
      } while (std::next_permutation(p.begin(), p.end()));
      if (seen.insert(best).second) out.push_back(*l);
      return;
    }
    auto [i, j] = pairs[k];
    for (int s = 0; s < 3; ++s) {
      le[i][j] = s == 1;
      le[j][i] = s == 2;
      rec(k + 1);
    }
    le[i][j] = le[j][i] = false;
  };
  rec(0);
  return out;
}

using NegCheck = std::function<bool(const RawLattice&, const std::vector<int>&, int bot, int top)>;

// Counts negation tables up to lattice automorphism.
int oracle_algebra_count(int n, const NegCheck& ok) {
  int total = 0;
  for (const auto& l : oracle_lattices(n)) {
    int bot = 0, top = 0;
    for (int x = 0; x < n; ++x) {
      if (l.meet[x][bot] == x) bot = x;
      if (l.join[x][top] == x) top = x;
    }
    std::vector<std::vector<int>> autos;
    auto p = identity_perm(n);
    do {
      bool a = true;
      for (int x = 0; x < n && a; ++x)
        for (int y = 0; y < n && a; ++y) a = p[l.meet[x][y]] == l.meet[p[x]][p[y]];
      if (a) autos.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::set<std::vector<int>> classes;
    std::vector<int> neg(n, 0);
    for (;;) {
      if (ok(l, neg, bot, top)) {
        std::vector<int> best;
        for (const auto& s : autos) {
          std::vector<int> img(n);
          for (int x = 0; x < n; ++x) img[s[x]] = s[neg[x]];
          if (best.empty() || img < best) best = img;
        }
        classes.insert(best);
      }
      int i = 0;
      while (i < n && ++neg[i] == n) neg[i++] = 0;
      if (i == n) break;
    }
    total += static_cast<int>(classes.size());
  }
  return total;
}

bool forall2(int n, const std::function<bool(int, int)>& f) {
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!f(x, y)) return false;
  return true;
}

bool dn_ok(const RawLattice& l, const std::vector<int>& ng, int bot, int top) {
  return ng[bot] == top && forall2(l.n, [&](int x, int y) { return ng[l.join[x][y]] == l.meet[ng[x]][ng[y]]; });
}

bool sdm_ok(const RawLattice& l, const std::vector<int>& ng, int bot, int top) {
  return dn_ok(l, ng, bot, top) && ng[top] == bot && forall2(l.n, [&](int x, int y) {
           return ng[ng[l.meet[x][y]]] == l.meet[ng[ng[x]]][ng[ng[y]]] && ng[x] == ng[ng[ng[x]]];
         });
}

std::vector<int> counts_by_size(const std::vector<FiniteAlgebra>& as, int max) {
  std::vector<int> c(max + 1, 0);
  for (const auto& a : as) ++c[a.size];
  return c;
}

}  // namespace

TEST_CASE("lattice enumeration matches the poset brute force", "[search]") {
  auto ls = enumerate_lattices(5);
  std::vector<int> got(6, 0);
  for (const auto& l : ls) ++got[l.size];
  for (int n = 1; n <= 5; ++n) CHECK(got[n] == static_cast<int>(oracle_lattices(n).size()));
  CHECK(got[2] == 1);
  CHECK(got[3] == 1);
  CHECK(got[4] == 2);
  CHECK(got[5] == 3);
  std::vector<int> cumulative;
  for (int n = 1; n <= 7; ++n) cumulative.push_back(static_cast<int>(enumerate_lattices(n).size()));
  CHECK(cumulative == std::vector<int>{1, 2, 3, 5, 8, 13, 21});
}

TEST_CASE("automorphisms", "[search]") {
  for (const auto& l : enumerate_lattices(4, 4)) {
    bool chain = true;
    for (int x = 0; x < l.size; ++x)
      for (int y = 0; y < l.size; ++y)
        if (!l.code[x * l.size + y] && !l.code[y * l.size + x]) chain = false;
    CHECK(automorphisms(l).size() == (chain ? 1u : 2u));
  }
}

TEST_CASE("algebra counts match a table brute force", "[search]") {
  for (auto [cls, ok] : {std::pair<const char*, NegCheck>{"DN", dn_ok}, {"SDM", sdm_ok}}) {
    auto got = counts_by_size(enumerate_algebras({Variety::parse(cls), 4, true}), 4);
    for (int n = 1; n <= 4; ++n) {
      INFO(cls << " size " << n);
      CHECK(got[n] == oracle_algebra_count(n, ok));
    }
  }
  // Both DN structures on the 2-chain: ~1 = 0 and ~1 = 1.
  CHECK(oracle_algebra_count(2, dn_ok) == 2);
}

TEST_CASE("frozen cumulative counts", "[search]") {
  const std::vector<std::pair<const char*, std::vector<int>>> table{
      {"DN", {1, 3, 9, 39, 165, 807}},       {"SDM", {1, 2, 5, 16, 47, 153}},
      {"DM", {1, 2, 3, 6, 7, 11}},           {"PL", {1, 2, 3, 5, 8, 13}},
      {"O", {1, 2, 5, 18, 63, 260}},         {"B", {1, 2, 2, 3, 3, 3}},
      {"Berman(1,0)", {1, 2, 3, 6, 7, 11}},  {"Berman(1,1)", {1, 2, 5, 16, 45, 147}},
  };
  for (const auto& [cls, want] : table) {
    auto all = enumerate_algebras({Variety::parse(cls), 6, true});
    auto by = counts_by_size(all, 6);
    std::vector<int> cum;
    int acc = 0;
    for (int n = 1; n <= 6; ++n) cum.push_back(acc += by[n]);
    INFO(cls);
    CHECK(cum == want);
  }
}

TEST_CASE("enumeration contract", "[search]") {
  for (const char* cls : {"DN", "SDM", "PL", "Berman(1,1)"}) {
    Variety v = Variety::parse(cls);
    auto five = enumerate_algebras({v, 5});
    for (const auto& a : five) REQUIRE(in_variety(a, v));
    auto four = enumerate_algebras({v, 4});
    REQUIRE(four.size() <= five.size());
    REQUIRE(std::equal(four.begin(), four.end(), five.begin()));
    REQUIRE(enumerate_algebras_serial({v, 5}) == five);
    std::set<std::vector<Elem>> keys;
    for (const auto& a : five) {
      FiniteAlgebra c = canonical_form(a);
      REQUIRE(c == a);
      std::vector<Elem> k = c.meet;
      k.insert(k.end(), c.neg.begin(), c.neg.end());
      REQUIRE(keys.insert(k).second);
    }
  }
  CHECK(enumerate_algebras({Variety::parse("DN"), 1}).empty());
  CHECK(enumerate_algebras({Variety::parse("DN"), 1, true}).size() == 1);
  CHECK_THROWS(enumerate_algebras({Variety::parse("DN"), 8}));
  CHECK_THROWS(enumerate_algebras({Variety::parse("DN"), 0}));
}

TEST_CASE("canonical form ignores labeling", "[search][property]") {
  auto as = enumerate_algebras({Variety::parse("DN"), 5});
  testing::Rng rng(41);
  for (int i = 0; i < 10000; ++i) {
    const FiniteAlgebra& a = as[i % as.size()];
    std::vector<Elem> p(a.size);
    std::iota(p.begin(), p.end(), Elem{0});
    std::shuffle(p.begin(), p.end(), rng);
    FiniteAlgebra b = a;
    for (int x = 0; x < a.size; ++x) {
      b.neg[p[x]] = p[a.n(x)];
      for (int y = 0; y < a.size; ++y) {
        b.meet[p[x] * a.size + p[y]] = p[a.m(x, y)];
        b.join[p[x] * a.size + p[y]] = p[a.j(x, y)];
      }
    }
    b.bot = p[a.bot];
    b.top = p[a.top];
    REQUIRE(canonical_form(b) == a);
  }
}

TEST_CASE("countermodels for f_n(r)", "[search]") {
  Formula p = Formula::var("p");
  const std::string x = indexed_name(Formula::neg(Formula::conj(p, p))), y = indexed_name(Formula::neg(p));
  for (int n = 0; n <= 3; ++n) {
    Rule r{"f", {f_k(n, neg_power(Formula::conj(p, p), n + 1))}, f_k(n, neg_power(p, n + 1)), false, {}};
    auto res = find_countermodel(r, {Variety::parse("DN"), 4}, SemanticsMode::filter());
    REQUIRE(res.found);
    CHECK(res.witness.algebra == boolean2());
    CHECK(res.witness.designated == 0b10);
    CHECK(res.witness.valuation.at(x) == (n % 2 == 0 ? 1 : 0));
    CHECK(res.witness.valuation.at(y) == (n % 2 == 0 ? 0 : 1));
    CHECK(witness_refutes(res.witness, r));
  }
}

TEST_CASE("countermodel search results", "[search]") {
  auto wxc = find_countermodel(rule_wxc(), {Variety::parse("DM"), 4}, SemanticsMode::filter());
  REQUIRE(wxc.found);
  CHECK(wxc.witness.algebra.size <= 4);
  CHECK(witness_refutes(wxc.witness, rule_wxc()));
  CHECK_FALSE(matrix_entails({wxc.witness.algebra, wxc.witness.designated}, consecution_of(directions(rule_wxc())[0])).ok);

  RuleSet sb = builtin(Builtin::SBullet);
  auto none = find_countermodel(*sb.find("r_neg_and"), {Variety::parse("SDM"), 5}, SemanticsMode::filter());
  CHECK_FALSE(none.found);
  CHECK(none.bound == 5);

  auto c = find_countermodel(parse_consecution("p |- ~p"), {Variety::parse("SDM"), 4}, SemanticsMode::filter());
  REQUIRE(c.found);
  CHECK(c.witness.algebra == boolean2());
  CHECK_THROWS(find_countermodel(rule_wxc(), {Variety::parse("DN"), 9}, SemanticsMode::filter()));
}

TEST_CASE("witnesses verify themselves", "[search][property]") {
  testing::Rng rng(42);
  EnumerationSpec spec{Variety::parse("DN"), 3};
  int found = 0;
  for (int i = 0; i < 10000; ++i) {
    Consecution c = testing::random_consecution(rng, {"p", "q"}, 7);
    auto res = find_countermodel(c, spec, SemanticsMode::filter());
    if (!res.found) continue;
    ++found;
    REQUIRE(witness_refutes(res.witness, c));
    REQUIRE_FALSE(matrix_entails({res.witness.algebra, res.witness.designated}, c).ok);
  }
  CHECK(found > 1000);
}
