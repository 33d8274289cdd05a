#pragma once

#include <string>
#include <vector>

#include "hforge/algebra.hpp"

namespace hforge {

// Postfix form of a formula over a fixed variable ordering.
class Program {
 public:
  Program() = default;
  Program(const Formula& f, const std::vector<std::string>& var_order);

  Elem run(const FiniteAlgebra& a, const Elem* vals) const {
    Elem stack[kStack];
    int sp = 0;
    for (const auto& in : code_) {
      switch (in.op) {
        case Op::Var: stack[sp++] = vals[in.arg]; break;
        case Op::Bot: stack[sp++] = a.bot; break;
        case Op::Top: stack[sp++] = a.top; break;
        case Op::Neg: stack[sp - 1] = a.n(stack[sp - 1]); break;
        case Op::And: --sp; stack[sp - 1] = a.m(stack[sp - 1], stack[sp]); break;
        case Op::Or: --sp; stack[sp - 1] = a.j(stack[sp - 1], stack[sp]); break;
      }
    }
    return stack[0];
  }

  static constexpr int kStack = 128;

 private:
  struct Instr {
    Op op;
    std::uint8_t arg;
  };
  std::vector<Instr> code_;
};

// Odometer over size^nvars valuations; the last variable moves fastest.
class ValuationCursor {
 public:
  ValuationCursor(int nvars, int size) : vals_(nvars, 0), size_(size) {}
  const Elem* data() const { return vals_.data(); }
  const std::vector<Elem>& values() const { return vals_; }
  bool next() {
    for (int i = static_cast<int>(vals_.size()) - 1; i >= 0; --i) {
      if (++vals_[i] < size_) return true;
      vals_[i] = 0;
    }
    return false;
  }

 private:
  std::vector<Elem> vals_;
  int size_;
};

Valuation to_valuation(const std::vector<std::string>& names, const std::vector<Elem>& vals);

}  // namespace hforge
