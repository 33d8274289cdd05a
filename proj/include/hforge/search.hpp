#pragma once

#include <optional>
#include <vector>

#include "hforge/algebra.hpp"
#include "hforge/semantics.hpp"

namespace hforge {

inline constexpr int kEnumerationCap = 7;

struct EnumerationSpec {
  Variety cls;
  int max_size = 4;
  bool include_trivial = false;
  int cap = kEnumerationCap;
};

// Bounded distributive lattice in canonical labeling: 0 is bottom, size-1 is
// top, and labels form a linear extension of the order.
struct Lattice {
  int size = 0;
  std::vector<Elem> meet;
  std::vector<Elem> join;
  std::vector<std::uint8_t> code;  // leq matrix, row-major; the canonical key
};

// One representative per isomorphism class, ordered by (size, code).
std::vector<Lattice> enumerate_lattices(int max_size, int min_size = 1);

// Permutations s with s(meet(x,y)) = meet(s(x),s(y)).
std::vector<std::vector<Elem>> automorphisms(const Lattice& l);

// Every isomorphism class of the variety up to max_size exactly once, in
// (size, lattice code, negation table) order. Throws when max_size > cap.
std::vector<FiniteAlgebra> enumerate_algebras(const EnumerationSpec& spec);
std::vector<FiniteAlgebra> enumerate_algebras_serial(const EnumerationSpec& spec);

// Canonical form of an algebra whose lattice reduct is distributive.
FiniteAlgebra canonical_form(const FiniteAlgebra& a);

struct CountermodelResult {
  bool found = false;
  Witness witness;
  int bound = 0;
};

CountermodelResult find_countermodel(const Rule& target, const EnumerationSpec& spec, const SemanticsMode& mode);
CountermodelResult find_countermodel(const Consecution& target, const EnumerationSpec& spec,
                                     const SemanticsMode& mode);

}  // namespace hforge
