#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torloop/lattice.hpp"
#include "torloop/linalg.hpp"
#include "torloop/simple_lie.hpp"

namespace torloop {

using RatVec = std::vector<Rational>;

struct AutoSpec {
  enum class Kind { Identity, Diagram, Inner, Matrix, Compose };
  Kind kind = Kind::Identity;
  std::vector<int> perm;           // diagram: 0-based image of each node
  RatVec coweight;                 // inner: coordinates on the simple coroots
  Matrix matrix;                   // columns are images of the Chevalley basis
  std::vector<AutoSpec> parts;     // compose: parts[0] after parts[1] after ...
  std::int64_t order = 1;
};

/// Matrix of the automorphism over Q(zeta_modulus); no validation beyond shape.
Matrix realize_auto(const SimpleAlgebra& g, const AutoSpec& spec, std::uint32_t modulus);

/// First basis pair (i, j) with A[x_i, x_j] != [A x_i, A x_j], if any.
std::optional<std::pair<std::size_t, std::size_t>> automorphism_defect(const SimpleAlgebra& g, const Matrix& a);

using SparseCyclo = std::vector<std::pair<std::uint32_t, CycloScalar>>;

struct AdaptedVector {
  Vector chev;   // Chevalley coordinates
  IntVec klass;  // (k0 mod m0, ..., kn mod mn)
  Vector weight; // values on the h(0) basis
};

/// Root data of g relative to h(0), in rational coordinates (values on the h(0) basis).
struct ZeroRootData {
  bool rational = false;
  bool form_nondegenerate = false;
  std::vector<RatVec> weights;     // nonzero weights of g on h(0)
  std::vector<RatVec> delta0;      // nonzero weights of g(0,0)
  std::vector<RatVec> positive0;   // positive part of delta0
  std::vector<RatVec> simple;      // simple roots of delta0
  std::vector<RatVec> enhanced;    // delta0, plus 2 * short roots for type B
  RatVec highest;                  // maximal root of the enhanced system
  bool type_b = false;
  bool irreducible = false;
  std::string type_label;
  std::vector<RatVec> gram_inv;    // inverse Gram matrix of (,) on h(0)
};

struct AssumptionReport {
  bool simple = false;
  bool cartan = false;
  bool roots = false;
  std::string simple_detail;
  std::string cartan_detail;
  std::string roots_detail;
  bool all() const { return simple && cartan && roots; }
};

/// g with commuting automorphisms sigma_0..sigma_n of orders m_0..m_n,
/// carried in an adapted basis: every basis vector is a simultaneous
/// eigenvector of the sigma_i and an h(0)-weight vector.
class TwistedSetup {
 public:
  static TwistedSetup build(SimpleAlgebra g, std::vector<AutoSpec> autos, IntVec orders);

  const SimpleAlgebra& algebra() const { return data_->g; }
  std::size_t n() const { return data_->orders.size() - 1; }
  const IntVec& orders() const { return data_->orders; }
  /// Lattice orders (m_1..m_n) of Gamma.
  IntVec spatial_orders() const { return IntVec(data_->orders.begin() + 1, data_->orders.end()); }
  std::uint32_t modulus() const { return data_->modulus; }
  std::uint64_t id() const { return data_->id; }
  bool untwisted() const;

  const std::vector<Matrix>& auto_matrices() const { return data_->autos; }
  /// xi_i = zeta_M^(M/m_i).
  CycloScalar xi(std::size_t i) const;

  std::size_t dim() const { return data_->basis.size(); }
  const AdaptedVector& basis(std::size_t a) const { return data_->basis[a]; }
  const std::map<IntVec, std::vector<std::size_t>>& eigenspaces() const { return data_->eigenspaces; }
  std::string label(std::size_t a) const;

  const SparseCyclo& bracket_terms(std::size_t a, std::size_t b) const { return data_->sc[a * dim() + b]; }
  const CycloScalar& form_entry(std::size_t a, std::size_t b) const { return data_->form[a * dim() + b]; }
  Vector bracket(const Vector& x, const Vector& y) const;
  CycloScalar form(const Vector& x, const Vector& y) const;

  /// Chevalley coordinates to adapted coordinates and back.
  Vector to_adapted(const Vector& chev) const;
  Vector to_chevalley(const Vector& adapted) const;

  const std::vector<Vector>& h0() const { return data_->h0; }
  const Matrix& h0_gram() const { return data_->h0_gram; }
  const ZeroRootData& root_data() const { return data_->roots; }

  /// Adapted indices spanning g-naught, in basis order.
  const std::vector<std::size_t>& g_naught() const { return data_->gnaught; }
  /// Lambda-degree (k1..kn mod m) of adapted vector a.
  IntVec spatial_class(std::size_t a) const;

  /// Adapted indices of g(k0 mod m0, k mod m) with the given weight.
  std::vector<std::size_t> weight_space(const IntVec& degree, const RatVec& weight) const;

 private:
  struct Data {
    SimpleAlgebra g;
    std::vector<AutoSpec> specs;
    IntVec orders;
    std::uint32_t modulus = 1;
    std::uint64_t id = 0;
    std::vector<Matrix> autos;
    std::vector<AdaptedVector> basis;
    std::map<IntVec, std::vector<std::size_t>> eigenspaces;
    std::vector<SparseCyclo> sc;
    std::vector<CycloScalar> form;
    std::vector<SparseCyclo> qinv_cols;
    std::vector<Vector> h0;
    Matrix h0_gram;
    ZeroRootData roots;
    std::vector<std::size_t> gnaught;
  };
  std::shared_ptr<const Data> data_;
};

AssumptionReport check_assumptions(const TwistedSetup& setup);

/// Numeric value of a rational weight vector held as cyclotomic scalars.
std::optional<RatVec> rational_weight(const Vector& w);
bool lex_positive(const RatVec& v);
RatVec rat_add(const RatVec& a, const RatVec& b);
RatVec rat_scale(const Rational& s, const RatVec& a);
bool rat_is_zero(const RatVec& a);
std::string to_string(const RatVec& v);
/// (mu, nu) on h(0)^* for weights given by their values on the h(0) basis.
Rational weight_inner(const ZeroRootData& rd, const RatVec& mu, const RatVec& nu);

}  // namespace torloop
