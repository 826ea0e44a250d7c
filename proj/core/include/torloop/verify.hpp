#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torloop/module_lab.hpp"
#include "torloop/random.hpp"
#include "torloop/root_data.hpp"
#include "torloop/toroidal.hpp"

namespace torloop {

struct Check {
  std::string name;
  bool pass = true;
  std::size_t samples = 0;
  std::string detail;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool pass() const;
  /// Checks sorted by name; byte-identical for identical inputs.
  std::string to_json() const;
  std::string to_text() const;
};

/// Homogeneous element of tau of a random degree, mixing the loop, central and derivation sectors.
TauElement random_homogeneous(const TwistedSetup& s, Rng& rng, int terms = 3);
/// Random pure derivation element t^r d_a with (r0, r) in Gamma_0 x Gamma.
TauElement random_derivation(const TwistedSetup& s, Rng& rng);

std::vector<Check> suite_jacobi(const TwistedSetup& s, const std::vector<CocycleParams>& phis, std::size_t samples,
                                Rng& rng);
/// Basis-triple Jacobi test of the tables of g; names the first failing triple.
Check check_structure_jacobi(const SimpleAlgebra& g);
std::vector<Check> suite_cocycle(const TwistedSetup& s, std::size_t samples, Rng& rng);
std::vector<Check> suite_invariance(const TwistedSetup& s, std::size_t samples, Rng& rng);
std::vector<Check> suite_grading(const TwistedSetup& s, std::size_t samples, Rng& rng);
std::vector<Check> suite_assumptions(const TwistedSetup& s);
std::vector<Check> suite_roots(const TwistedSetup& s, const IntVec& box, std::size_t samples, Rng& rng);
std::vector<Check> suite_automorphism(const TwistedSetup& s, std::size_t samples, Rng& rng);
/// Every nonzero c with entries in [-bound, bound] and length len.
Check check_charge_normalization(std::size_t len, std::int64_t bound);
std::vector<Check> suite_ideal_chain(const TwistedSetup& s, int max_d, std::size_t samples, Rng& rng);
Check check_gl_quotient(std::size_t n, std::size_t samples, Rng& rng);
std::vector<Check> suite_module_relations(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2,
                                          const RatVec& alpha, const Rational& d0, std::size_t samples, Rng& rng);
std::vector<Check> suite_components(const TwistedSetup& s, const GradedModule& m, std::size_t samples, Rng& rng);
std::vector<Check> suite_theta(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th,
                               std::size_t samples, Rng& rng);

}  // namespace torloop
