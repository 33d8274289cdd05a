#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hforge/algebra.hpp"
#include "hforge/rule.hpp"

namespace hforge {

struct Consecution {
  std::vector<Formula> premises;
  Formula conclusion;
};

// "f1, f2 |- g" or "|- g".
Consecution parse_consecution(std::string_view text, ParseOptions opts = {});
std::string print_consecution(const Consecution& c);
Consecution consecution_of(const RuleDirection& d);

struct Witness {
  FiniteAlgebra algebra;
  ElemSet designated = 0;
  Valuation valuation;
  std::string target;
  int algebra_index = -1;
  bool backward = false;  // failing direction of a bidirectional rule
};

struct Verdict {
  bool ok = true;
  std::optional<Witness> witness;
};

struct SemanticsMode {
  enum class Kind { Filter, Assertional, FixedMatrix };
  Kind kind = Kind::Filter;
  ElemSet designated = 0;  // FixedMatrix only

  static SemanticsMode filter() { return {Kind::Filter, 0}; }
  static SemanticsMode assertional() { return {Kind::Assertional, 0}; }
  static SemanticsMode fixed(ElemSet d) { return {Kind::FixedMatrix, d}; }
  std::string name() const;
  static SemanticsMode parse(std::string_view s);
};

Verdict matrix_entails(const Matrix& m, const Consecution& c);

// Gamma |- phi iff /\Gamma <= phi in every algebra (phi = 1 when Gamma is
// empty). Throws on a non-DN algebra when check_class is set. A witness
// designates the principal filter of /\Gamma.
Verdict order_entails(const std::vector<FiniteAlgebra>& algebras, const Consecution& c, bool check_class = true);

Verdict assertional_entails(const std::vector<FiniteAlgebra>& algebras, const Consecution& c);

// Designated sets an algebra contributes under a mode.
std::vector<ElemSet> designated_sets(const FiniteAlgebra& a, const SemanticsMode& mode);

// First failure in (direction, algebra, designated set, valuation) order.
// The parallel version splits algebras across OpenMP threads and returns the
// same witness as the serial one.
Verdict rule_sound(const Rule& r, const std::vector<FiniteAlgebra>& algebras, const SemanticsMode& mode);
Verdict rule_sound_serial(const Rule& r, const std::vector<FiniteAlgebra>& algebras, const SemanticsMode& mode);
Verdict consecution_sound(const Consecution& c, const std::vector<FiniteAlgebra>& algebras,
                          const SemanticsMode& mode);
Verdict consecution_sound_serial(const Consecution& c, const std::vector<FiniteAlgebra>& algebras,
                                 const SemanticsMode& mode);

}  // namespace hforge

namespace hforge {

// True when w's valuation designates every premise of c and not its
// conclusion. Variables of c missing from the valuation fail the check.
bool witness_refutes(const Witness& w, const Consecution& c);
bool witness_refutes(const Witness& w, const Rule& r);

}  // namespace hforge
