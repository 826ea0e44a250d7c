#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torloop/lattice.hpp"
#include "torloop/linalg.hpp"
#include "torloop/scalar.hpp"

namespace torloop {

/// Sparse element of g in the Chevalley basis.
struct GElement {
  std::map<std::size_t, CycloScalar> coeffs;

  static GElement basis(std::size_t i);
  static GElement from_dense(const Vector& v);
  Vector to_dense(std::size_t dim) const;
  bool is_zero() const { return coeffs.empty(); }
};

using SparseTerms = std::vector<std::pair<std::uint32_t, Rational>>;

/// A finite-dimensional simple Lie algebra with a Chevalley basis.
///
/// Basis order: e_alpha for the positive roots (sorted by height, then
/// lexicographically on simple-root coordinates), then e_{-alpha} in the same
/// order, then the simple coroots h_1..h_r. Signs of the structure constants
/// are fixed by taking N = +(p+1) on every extraspecial pair.
/// The invariant form is normalized so that long roots have (a,a) = 2.
class SimpleAlgebra {
 public:
  static SimpleAlgebra build(char type, int rank);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;
  std::size_t dim() const { return dim_; }
  std::size_t num_positive() const { return npos_; }

  /// Root of basis vector i (< 2*num_positive()) in simple-root coordinates.
  const IntVec& root(std::size_t i) const { return roots_[i]; }
  std::optional<std::size_t> root_index(const IntVec& coords) const;
  bool is_cartan(std::size_t i) const { return i >= 2 * npos_; }
  std::size_t cartan_index(int i) const { return 2 * npos_ + static_cast<std::size_t>(i); }
  std::size_t simple_index(int i) const { return simple_idx_[static_cast<std::size_t>(i)]; }
  std::size_t negative_of(std::size_t i) const { return i < npos_ ? i + npos_ : i - npos_; }

  /// (alpha_i, alpha_j) with long roots of length 2.
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }
  /// A_ij = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
  const std::vector<IntVec>& cartan_matrix() const { return cartan_; }
  Rational inner(const IntVec& a, const IntVec& b) const;
  /// Coefficients of alpha^vee on the simple coroots.
  IntVec coroot_coords(const IntVec& alpha) const;
  /// <alpha, h_i>
  std::int64_t pairing(const IntVec& alpha, int i) const;

  std::string label(std::size_t i) const;

  const SparseTerms& bracket_terms(std::size_t i, std::size_t j) const { return sc_[i * dim_ + j]; }
  const Rational& form_entry(std::size_t i, std::size_t j) const { return form_[i * dim_ + j]; }

  Vector bracket(const Vector& x, const Vector& y) const;
  CycloScalar form(const Vector& x, const Vector& y) const;
  GElement bracket(const GElement& x, const GElement& y) const;
  CycloScalar form(const GElement& x, const GElement& y) const;

  /// N_{alpha,beta} for roots given by basis index; 0 when alpha+beta is not a root.
  Rational structure_constant(std::size_t a, std::size_t b) const;

  /// Extraspecial pair (simple index, partner basis index) of a non-simple positive root.
  std::pair<int, std::size_t> extraspecial(std::size_t pos_index) const { return extraspecial_[pos_index]; }

  /// Replace structure constants and form (e.g. loaded from an export file).
  void override_tables(std::vector<SparseTerms> sc, std::vector<Rational> form);

 private:
  char type_ = 'A';
  int rank_ = 0;
  std::size_t dim_ = 0;
  std::size_t npos_ = 0;
  std::vector<IntVec> roots_;
  std::map<IntVec, std::size_t> root_lookup_;
  std::vector<std::size_t> simple_idx_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<IntVec> cartan_;
  std::vector<std::pair<int, std::size_t>> extraspecial_;
  std::vector<SparseTerms> sc_;
  std::vector<Rational> form_;
};

/// Independent check over all basis triples; returns the first failing
/// triple (i, j, k) or nullopt when the Jacobi identity holds.
std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> find_jacobi_violation(const SimpleAlgebra& g);

}  // namespace torloop
