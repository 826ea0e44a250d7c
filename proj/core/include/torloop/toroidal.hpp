#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "torloop/twist.hpp"

namespace torloop {

/// phi = mu1 * phi1 + mu2 * phi2 on the derivation sector.
struct CocycleParams {
  CycloScalar mu1;
  CycloScalar mu2;
};

using LoopKey = std::pair<std::size_t, IntVec>;    // (adapted index, (k0, k))
using AxisKey = std::pair<IntVec, std::size_t>;    // ((k0, k), axis)
using LoopMap = std::map<LoopKey, CycloScalar>;
using AxisMap = std::map<AxisKey, CycloScalar>;

/// Finitely supported element of tau = L(g, sigma) + Z + D.
/// `central` is kept modulo dA; call normalize() after editing it by hand.
struct TauElement {
  LoopMap loop;
  AxisMap central;
  AxisMap deriv;
  std::uint64_t setup_id = 0;  // 0 = not bound to a setup

  static TauElement loop_term(std::size_t idx, IntVec degree, CycloScalar c = CycloScalar(1));
  static TauElement central_term(IntVec degree, std::size_t axis, CycloScalar c = CycloScalar(1));
  static TauElement deriv_term(IntVec degree, std::size_t axis, CycloScalar c = CycloScalar(1));

  bool is_zero() const { return loop.empty() && central.empty() && deriv.empty(); }
  void normalize();

  TauElement& operator+=(const TauElement& o);
  TauElement& operator-=(const TauElement& o);
  TauElement& operator*=(const CycloScalar& c);
  friend TauElement operator+(TauElement a, const TauElement& b) { return a += b; }
  friend TauElement operator-(TauElement a, const TauElement& b) { return a -= b; }
  friend TauElement operator*(const CycloScalar& c, TauElement a) { return a *= c; }
  bool operator==(const TauElement& o) const;
};

/// Representative of a central element in Omega/dA: at each nonzero degree
/// d the coordinate K_j with j = max{i : d_i != 0} is eliminated.
AxisMap central_normal_form(const AxisMap& raw);

/// Throws InputError if the element violates the grading of the setup.
void validate_element(const TwistedSetup& s, const TauElement& x);

TauElement tau_bracket(const TwistedSetup& s, const TauElement& a, const TauElement& b,
                       const CocycleParams& phi = {});

/// phi1 (which = 1) or phi2 (which = 2) on t^r d_a, t^s d_b, normalized.
AxisMap cocycle_value(const IntVec& r, std::size_t a, const IntVec& s, std::size_t b, int which);

/// Action of t^r d_a on t^s K_b, normalized.
AxisMap derivation_on_central(const IntVec& r, std::size_t a, const IntVec& s, std::size_t b);

TauElement jacobi_residual(const TwistedSetup& s, const TauElement& a, const TauElement& b, const TauElement& c,
                           const CocycleParams& phi = {});

/// Total degree of a homogeneous element; nullopt if zero or inhomogeneous.
std::optional<IntVec> homogeneous_degree(const TauElement& x);

std::string to_string(const TwistedSetup& s, const TauElement& x);

}  // namespace torloop
