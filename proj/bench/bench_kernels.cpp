// Serial reference vs OpenMP kernels. Each row reports the best of several
// runs and whether both versions returned the same result.
//
//   hforge-bench [max_size] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "hforge/calculi.hpp"
#include "hforge/search.hpp"
#include "hforge/semantics.hpp"

using namespace hforge;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  int max = argc > 1 ? std::atoi(argv[1]) : 5;
  int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d, max size %d, best of %d\n", omp_get_max_threads(), max, repeats);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  bool all_same = true;
  for (const char* cls : {"DN", "SDM", "O"}) {
    EnumerationSpec spec{Variety::parse(cls), max};
    std::vector<FiniteAlgebra> a, b;
    double s = best_of(repeats, [&] { a = enumerate_algebras_serial(spec); });
    double p = best_of(repeats, [&] { b = enumerate_algebras(spec); });
    std::string name = std::string("enumerate ") + cls + " (" + std::to_string(a.size()) + ")";
    row(name.c_str(), s, p, a == b);
    all_same &= a == b;
  }

  auto sdm = enumerate_algebras({Variety::parse("SDM"), max});
  RuleSet rs = sdm_calculus(preset("SDM").equations);
  for (auto mode : {SemanticsMode::filter(), SemanticsMode::assertional()}) {
    bool same = true;
    double s = best_of(repeats, [&] {
      for (const auto& r : rs) rule_sound_serial(r, sdm, mode);
    });
    double p = best_of(repeats, [&] {
      for (const auto& r : rs) rule_sound(r, sdm, mode);
    });
    for (const auto& r : rs) same &= rule_sound_serial(r, sdm, mode).ok == rule_sound(r, sdm, mode).ok;
    std::string name = "sdm calculus sound, " + mode.name();
    row(name.c_str(), s, p, same);
    all_same &= same;
  }

  // A rule that fails late exercises the first-witness merge.
  Rule wxc = rule_wxc();
  auto dn = enumerate_algebras({Variety::parse("DN"), max});
  Verdict vs, vp;
  double s = best_of(repeats, [&] { vs = rule_sound_serial(wxc, dn, SemanticsMode::assertional()); });
  double p = best_of(repeats, [&] { vp = rule_sound(wxc, dn, SemanticsMode::assertional()); });
  row("r_wxc assertional over DN", s, p, vs.ok == vp.ok);
  all_same &= vs.ok == vp.ok;
  return all_same ? 0 : 1;
}
