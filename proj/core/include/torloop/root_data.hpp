#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torloop/twist.hpp"

namespace torloop {

/// lambda = finite + sum delta_i * delta_i + sum lambda_i * Lambda_i, i = 0..n.
/// `finite` holds the values on the h(0) basis.
struct WeightFunctional {
  RatVec finite;
  RatVec delta;
  RatVec lambda;

  bool operator==(const WeightFunctional&) const = default;
};

/// Element of H = h(0) + sum C K_i + sum C d_i; h0 in h(0)-basis coordinates.
struct HElement {
  RatVec h0;
  RatVec K;
  RatVec d;

  bool operator==(const HElement&) const = default;
};

/// gamma = alpha + k0 delta_0 + delta_k with degree = (k0, k).
struct RootLabel {
  RatVec alpha;
  IntVec degree;

  bool is_real() const { return !rat_is_zero(alpha); }
  bool operator==(const RootLabel&) const = default;
};

WeightFunctional zero_functional(const TwistedSetup& s);
WeightFunctional delta(const TwistedSetup& s, std::size_t i);
WeightFunctional big_lambda(const TwistedSetup& s, std::size_t i);
WeightFunctional functional_of(const TwistedSetup& s, const RootLabel& g);
/// Inverse of functional_of when lambda has zero Lambda part and integral delta part.
std::optional<RootLabel> label_of(const WeightFunctional& w);

WeightFunctional operator+(const WeightFunctional& a, const WeightFunctional& b);
WeightFunctional operator-(const WeightFunctional& a, const WeightFunctional& b);
WeightFunctional operator*(const Rational& c, const WeightFunctional& a);

Rational evaluate(const WeightFunctional& w, const HElement& h);
Rational form_hstar(const TwistedSetup& s, const WeightFunctional& a, const WeightFunctional& b);

/// dim tau_gamma; central and derivation lines are counted in the zero-weight part.
std::size_t root_space_dim(const TwistedSetup& s, const RootLabel& g);
bool is_root(const TwistedSetup& s, const RootLabel& g);

/// All (gamma, dim tau_gamma) with |k0| <= box[0], |k_i| <= box[i], dim > 0.
std::vector<std::pair<RootLabel, std::size_t>> root_spaces(const TwistedSetup& s, const IntVec& box);

HElement coroot(const TwistedSetup& s, const RootLabel& g);
WeightFunctional reflect(const TwistedSetup& s, const RootLabel& g, const WeightFunctional& w);

/// lambda <= mu iff mu - lambda lies in the N-span of alpha_0 = delta_0 - beta_0, alpha_1..alpha_p.
bool leq(const TwistedSetup& s, const WeightFunctional& lambda, const WeightFunctional& mu);

std::string to_string(const RootLabel& g);
std::string to_string(const WeightFunctional& w);
std::string to_string(const HElement& h);

}  // namespace torloop
