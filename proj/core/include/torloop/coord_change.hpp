#pragma once

#include <utility>

#include "torloop/lattice.hpp"
#include "torloop/toroidal.hpp"

namespace torloop {

/// B in GL(n+1, Z) with its integer inverse.
struct LatticeAuto {
  IntMatrix B;
  IntMatrix Binv;

  static LatticeAuto make(IntMatrix b);
  static LatticeAuto identity(std::size_t n1);
  LatticeAuto operator*(const LatticeAuto& o) const;
};

/// Change of coordinates on an untwisted setup (all m_i = 1):
///   x(k) -> x(Bk),  t^k K_j -> sum_p b_pj t^{Bk} K_p,  t^k d_j -> sum_p (B^-1)_jp t^{Bk} d_p.
TauElement apply_lattice_auto(const TwistedSetup& s, const LatticeAuto& b, const TauElement& x);

/// Charge seen through B: c'_j = c(B K_j) = (B^T c)_j.
IntVec transform_charge(const LatticeAuto& b, const IntVec& c);

/// B with B^T c = (gcd(c), 0, ..., 0).
std::pair<LatticeAuto, IntVec> normalize_central_charge(const IntVec& c);

}  // namespace torloop
