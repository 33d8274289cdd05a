#include "hforge/prover.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace hforge {

namespace {

struct Dir {
  RuleDirection d;
  std::vector<std::string> fwd_free;  // conclusion vars missing from the premises
  std::vector<std::string> bwd_free;  // premise vars missing from the conclusion
};

struct Fact {
  Formula f;
  int dir = -1;  // -1: goal premise
  Substitution s;
  std::vector<int> cites;
};

struct Node {
  Formula f;
  int dir = -1;  // -1: the goal itself
  Substitution s;
  int parent = -1;
};

Substitution tidy(const Substitution& s) {
  Substitution out;
  for (const auto& [k, v] : s)
    if (!(v.is_var() && v.name() == k)) out.emplace(k, v);
  return out;
}

class Search {
 public:
  Search(const RuleSet& rs, const Consecution& c, const SearchBudget& b) : goal_(c), budget_(b) {
    for (const auto& r : rs)
      for (auto& d : directions(r)) {
        Dir x;
        std::set<std::string> pv, cv;
        for (const auto& p : d.premises) collect_vars(p, pv);
        collect_vars(d.conclusion, cv);
        for (const auto& v : cv)
          if (!pv.count(v)) x.fwd_free.push_back(v);
        for (const auto& v : pv)
          if (!cv.count(v)) x.bwd_free.push_back(v);
        x.d = std::move(d);
        dirs_.push_back(std::move(x));
      }
    std::vector<Formula> subs{Formula::bot(), Formula::top()};
    for (const auto& p : c.premises) collect_subformulas(p, subs);
    collect_subformulas(c.conclusion, subs);
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    pool_ = std::move(subs);
  }

  ProveResult run() {
    ProveResult res;
    for (const auto& p : goal_.premises) add_fact(Fact{p, -1, {}, {}});
    add_node(Node{goal_.conclusion, -1, {}, -1});
    std::size_t fstart = 0, bstart = 0;
    int flevel = 0, blevel = 0;
    while (!met_ && !out_of_steps_) {
      if (flevel + blevel >= budget_.max_depth) {
        res.exhausted = "max_depth";
        break;
      }
      std::size_t ffront = facts_.size() - fstart, bfront = nodes_.size() - bstart;
      // zero-premise rules need one forward level even without premises
      bool forward = flevel == 0 || (ffront > 0 && (bfront == 0 || ffront <= bfront));
      if (!forward && bfront == 0) {
        res.exhausted = "saturated";
        break;
      }
      if (forward) {
        std::size_t end = facts_.size();
        forward_level(fstart, end, flevel == 0);
        fstart = end;
        ++flevel;
      } else {
        std::size_t end = nodes_.size();
        backward_level(bstart, end);
        bstart = end;
        ++blevel;
      }
      if (!met_ && facts_.size() == fstart && nodes_.size() == bstart) {
        res.exhausted = "saturated";
        break;
      }
    }
    res.steps = static_cast<int>(facts_.size() + nodes_.size()) - static_cast<int>(goal_.premises.size()) - 1;
    res.depth = flevel + blevel;
    if (met_) {
      res.found = true;
      res.exhausted.clear();
      res.derivation = build();
    } else if (out_of_steps_) {
      res.exhausted = "max_steps";
    }
    return res;
  }

 private:
  bool within(const Formula& f) const { return static_cast<int>(f.size()) <= budget_.max_formula_size; }

  bool charge() {
    if (++spent_ > budget_.max_steps) out_of_steps_ = true;
    return !out_of_steps_;
  }

  void add_fact(Fact f) {
    if (met_ || fidx_.count(f.f)) return;
    int i = static_cast<int>(facts_.size());
    fidx_.emplace(f.f, i);
    auto b = nidx_.find(f.f);
    facts_.push_back(std::move(f));
    if (b != nidx_.end()) meet(i, b->second);
  }

  void add_node(Node n) {
    if (met_ || nidx_.count(n.f)) return;
    int i = static_cast<int>(nodes_.size());
    nidx_.emplace(n.f, i);
    auto f = fidx_.find(n.f);
    nodes_.push_back(std::move(n));
    if (f != fidx_.end()) meet(f->second, i);
  }

  void meet(int fact, int node) {
    met_ = true;
    meet_fact_ = fact;
    meet_node_ = node;
  }

  // Binds each name in free to every pool member in turn.
  void each_free(const std::vector<std::string>& free, Substitution& s, const std::function<void()>& k) {
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (met_ || out_of_steps_) return;
      if (i == free.size()) {
        k();
        return;
      }
      for (const auto& f : pool_) {
        s[free[i]] = f;
        rec(i + 1);
        if (met_ || out_of_steps_) break;
      }
      s.erase(free[i]);
    };
    rec(0);
  }

  // Semi-naive: at least one premise comes from [start, end).
  void forward_level(std::size_t start, std::size_t end, bool first) {
    for (int di = 0; di < static_cast<int>(dirs_.size()) && !met_ && !out_of_steps_; ++di) {
      const Dir& dir = dirs_[di];
      const auto& prem = dir.d.premises;
      if (prem.empty()) {
        if (!first) continue;
        Substitution s;
        each_free(dir.fwd_free, s, [&] { emit(di, s, {}); });
        continue;
      }
      std::vector<int> cites(prem.size());
      for (std::size_t pivot = 0; pivot < prem.size(); ++pivot) {
        std::function<void(std::size_t, const Substitution&)> rec = [&](std::size_t i, const Substitution& s) {
          if (met_ || out_of_steps_) return;
          if (i == prem.size()) {
            Substitution t = s;
            each_free(dir.fwd_free, t, [&] { emit(di, t, cites); });
            return;
          }
          std::size_t lo = i == pivot ? start : 0;
          std::size_t hi = i < pivot ? start : end;
          for (std::size_t fi = lo; fi < hi && !met_ && !out_of_steps_; ++fi) {
            Substitution t = s;
            if (!match(prem[i], facts_[fi].f, t)) continue;
            cites[i] = static_cast<int>(fi);
            rec(i + 1, t);
          }
        };
        rec(0, {});
      }
    }
  }

  void emit(int di, const Substitution& s, const std::vector<int>& cites) {
    Formula c = substitute(dirs_[di].d.conclusion, s);
    if (!within(c) || fidx_.count(c)) return;
    if (!charge()) return;
    add_fact(Fact{c, di, s, cites});
  }

  void backward_level(std::size_t start, std::size_t end) {
    for (std::size_t ni = start; ni < end && !met_ && !out_of_steps_; ++ni) {
      for (int di = 0; di < static_cast<int>(dirs_.size()) && !met_ && !out_of_steps_; ++di) {
        const Dir& dir = dirs_[di];
        if (dir.d.premises.size() != 1) continue;
        Substitution s;
        if (!match(dir.d.conclusion, nodes_[ni].f, s)) continue;
        each_free(dir.bwd_free, s, [&] {
          Formula p = substitute(dir.d.premises[0], s);
          if (!within(p) || nidx_.count(p)) return;
          if (!charge()) return;
          add_node(Node{p, di, s, static_cast<int>(ni)});
        });
      }
    }
  }

  Step step_of(int di, const Substitution& s, std::vector<int> cites, const Formula& f) const {
    Step st;
    st.formula = f;
    st.just.premise = false;
    st.just.rule = dirs_[di].d.name;
    st.just.backward = dirs_[di].d.backward;
    std::set<std::string> vs = rule_vars(dirs_[di].d);
    Substitution keep;
    for (const auto& [k, v] : s)
      if (vs.count(k)) keep.emplace(k, v);
    st.just.subst = tidy(keep);
    st.just.cites = std::move(cites);
    return st;
  }

  Derivation build() const {
    Derivation d;
    d.goal = goal_;
    std::set<int> need;
    std::function<void(int)> mark = [&](int i) {
      if (!need.insert(i).second) return;
      for (int c : facts_[i].cites) mark(c);
    };
    mark(meet_fact_);
    std::unordered_map<int, int> num;
    for (int i : need) {
      const Fact& f = facts_[i];
      if (f.dir < 0) {
        Step st;
        st.formula = f.f;
        d.steps.push_back(st);
      } else {
        std::vector<int> cites;
        for (int c : f.cites) cites.push_back(num.at(c));
        d.steps.push_back(step_of(f.dir, f.s, cites, f.f));
      }
      num[i] = static_cast<int>(d.steps.size());
    }
    int prev = num.at(meet_fact_);
    for (int n = meet_node_; nodes_[n].parent >= 0; n = nodes_[n].parent) {
      const Node& nd = nodes_[n];
      d.steps.push_back(step_of(nd.dir, nd.s, {prev}, nodes_[nd.parent].f));
      prev = static_cast<int>(d.steps.size());
    }
    return d;
  }

  Consecution goal_;
  SearchBudget budget_;
  std::vector<Dir> dirs_;
  std::vector<Formula> pool_;
  std::vector<Fact> facts_;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, int, FormulaHash> fidx_, nidx_;
  int spent_ = 0;
  bool met_ = false, out_of_steps_ = false;
  int meet_fact_ = -1, meet_node_ = -1;
};

}  // namespace

ProveResult prove(const RuleSet& rs, const Consecution& c, const SearchBudget& budget) {
  return Search(rs, c, budget).run();
}

}  // namespace hforge
