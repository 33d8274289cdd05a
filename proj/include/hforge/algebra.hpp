#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hforge/calculi.hpp"
#include "hforge/formula.hpp"

namespace hforge {

using Elem = std::uint8_t;
using ElemSet = std::uint32_t;  // bitmask over the carrier

inline constexpr int kMaxCarrier = 16;

struct FiniteAlgebra {
  int size = 0;
  std::vector<Elem> meet;  // size*size, row-major
  std::vector<Elem> join;
  std::vector<Elem> neg;
  Elem bot = 0;
  Elem top = 0;

  Elem m(Elem a, Elem b) const { return meet[a * size + b]; }
  Elem j(Elem a, Elem b) const { return join[a * size + b]; }
  Elem n(Elem a) const { return neg[a]; }
  bool leq(Elem a, Elem b) const { return m(a, b) == a; }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;
};

struct Matrix {
  FiniteAlgebra alg;
  ElemSet designated = 0;
};

// Block label per element; labels number blocks by least member.
using Congruence = std::vector<int>;

using Valuation = std::map<std::string, Elem>;

// Throws std::invalid_argument on wrong table sizes or out-of-range entries.
void check_tables(const FiniteAlgebra& a);

struct AxiomCheck {
  std::string label;
  bool ok = true;
  Valuation witness;
};

struct Diagnostics {
  bool ok = true;
  std::vector<AxiomCheck> checks;
};

Diagnostics validate(const FiniteAlgebra& a, const Variety& v);
bool in_variety(const FiniteAlgebra& a, const Variety& v);

Elem eval(const FiniteAlgebra& a, const Valuation& v, const Formula& f);

struct HoldsResult {
  bool ok = true;
  Valuation witness;
};
HoldsResult holds(const FiniteAlgebra& a, const Equation& e);

std::vector<ElemSet> filters(const FiniteAlgebra& a);
bool is_filter(const FiniteAlgebra& a, ElemSet s);

inline constexpr int kCongruenceBound = 7;

bool is_congruence(const FiniteAlgebra& a, const Congruence& c);
std::vector<Congruence> congruences(const FiniteAlgebra& a, int bound = kCongruenceBound);
Congruence identity_congruence(int size);
Congruence total_congruence(int size);
Congruence normalize(const Congruence& c);
bool is_identity(const Congruence& c);

Congruence leibniz(const Matrix& m, int bound = kCongruenceBound);
Congruence leibniz_sdm(const Matrix& m);

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& c);
FiniteAlgebra star_algebra(const FiniteAlgebra& a);

// Named algebras used across tests and the CLI.
FiniteAlgebra boolean2();
FiniteAlgebra belnap4();  // bot=0, a=1, b=2, top=3; ~a=a, ~b=b
FiniteAlgebra chain(int size, const std::vector<Elem>& neg);  // 0 < 1 < ... < size-1

std::string element_set_str(ElemSet s);
std::vector<Elem> members(ElemSet s);

}  // namespace hforge
