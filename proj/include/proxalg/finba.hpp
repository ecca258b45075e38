#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "proxalg/regopen.hpp"

namespace proxalg {

// Finite Boolean algebra with n atoms. Elements are atom sets encoded as
// bit masks, so everything is enumerable; n is capped to keep exhaustive
// sweeps cheap.
struct FinBoolAlg {
  int atoms = 1;
  using Elem = std::uint32_t;

  explicit FinBoolAlg(int n = 1) : atoms(n) {
    if (n < 0 || n > 16) throw std::invalid_argument("atom count out of range");
  }

  Elem top() const { return atoms == 0 ? 0u : ((1u << atoms) - 1u); }
  Elem bot() const { return 0u; }
  Elem meet(Elem a, Elem b) const { return a & b; }
  Elem join(Elem a, Elem b) const { return a | b; }
  Elem complement(Elem a) const { return top() & ~a; }
  bool leq(Elem a, Elem b) const { return (a & ~b) == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::size_t size() const { return std::size_t{1} << atoms; }

  std::vector<Elem> elements() const {
    std::vector<Elem> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Elem>(i);
    return out;
  }

  friend bool operator==(const FinBoolAlg&, const FinBoolAlg&) = default;
};

// The complete Boolean algebra of regular opens of [0,1], wrapped in the
// same carrier interface as FinBoolAlg so algorithms can be generic.
struct RegOpenAlg {
  using Elem = RegOpen;

  RegOpen top() const { return regopen_full(); }
  RegOpen bot() const { return regopen_empty(); }
  RegOpen meet(const RegOpen& a, const RegOpen& b) const { return regopen_meet(a, b); }
  RegOpen join(const RegOpen& a, const RegOpen& b) const { return regopen_join(a, b); }
  RegOpen complement(const RegOpen& a) const { return regopen_complement(a); }
  bool leq(const RegOpen& a, const RegOpen& b) const { return regopen_leq(a, b); }
  bool eq(const RegOpen& a, const RegOpen& b) const { return a == b; }

  friend bool operator==(const RegOpenAlg&, const RegOpenAlg&) = default;
};

}  // namespace proxalg
