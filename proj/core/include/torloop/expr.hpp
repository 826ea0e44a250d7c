#pragma once

#include <string>

#include "torloop/toroidal.hpp"

namespace torloop {

/// Parses the text form printed by to_string(setup, element):
///   e(1)*t0^1*t1^2 + 3*K0@(0,0) - t1^2*d0 + (1 + z^1)*e(0)
/// Coefficients are rationals, z^e (a power of zeta_M for the setup's M),
/// zN^e (a power of zeta_N, N dividing M) or parenthesized sums of these.
/// K_j and d_j take their degree from the t-factors, from @(k0,...,kn), or both added.
TauElement parse_element(const TwistedSetup& s, const std::string& text);

/// Scalar-only variant of the same grammar.
CycloScalar parse_scalar(const std::string& text, std::uint32_t modulus = 1);

}  // namespace torloop
