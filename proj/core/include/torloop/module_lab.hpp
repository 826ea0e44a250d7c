#pragma once

#include <map>
#include <string>
#include <vector>

#include "torloop/random.hpp"
#include "torloop/toroidal.hpp"

namespace torloop {

/// gl_n representation: e[a*n + b] is the image of E_{a+1, b+1}.
struct GlRep {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<Matrix> e;
};

/// Lambda-graded representation of g-naught, keyed by adapted index.
struct GnaughtRep {
  std::size_t dim = 0;
  std::vector<IntVec> grading;
  std::map<std::size_t, Matrix> x;
};

GlRep gl_trivial(std::size_t n);
GlRep gl_natural(std::size_t n);
GlRep gl_adjoint(std::size_t n);
GnaughtRep gnaught_trivial(const TwistedSetup& s);
GnaughtRep gnaught_adjoint(const TwistedSetup& s);

/// Finite-dimensional Lambda-graded module V~ for gl_n + g-naught, with the
/// weight data alpha = (lambda(d_1), ..., lambda(d_n)) and lambda(d_0).
struct GradedModule {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<IntVec> grading;
  std::vector<Matrix> gl;
  std::map<std::size_t, Matrix> gnaught;
  RatVec alpha;
  Rational d0;
};

/// V~1 (x) V~2 with E acting on the first factor and g-naught on the second.
GradedModule tensor_module(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2, const RatVec& alpha,
                           const Rational& d0);

/// Throws InputError naming the first broken requirement.
void validate_module(const TwistedSetup& s, const GradedModule& m);

/// rho(A) = sum_ab A_ab rho(E_ab).
Matrix gl_action(const GradedModule& m, const Matrix& a);

/// Element of L(V~) = V~ (x) A_n: monomial t^l -> vector.
using LoopVec = std::map<IntVec, Vector>;

void add_to(LoopVec& a, const LoopVec& b, const CycloScalar& c = CycloScalar(1));
bool is_zero(const LoopVec& v);

/// One spanning element of L = L(g-naught) + Der A(m) + A(m) + sum C t^r d_0.
struct LAction {
  enum class Kind { Loop, Der, T, TD0 };
  Kind kind = Kind::T;
  std::size_t x = 0;  // Loop: adapted g-naught index
  IntVec deg;         // k for X(k), r for D(u,r), s for t^s, r for t^r d_0
  RatVec u;           // Der only

  static LAction loop(std::size_t x, IntVec k) { return {Kind::Loop, x, std::move(k), {}}; }
  static LAction der(RatVec u, IntVec r) { return {Kind::Der, 0, std::move(r), std::move(u)}; }
  static LAction t(IntVec s) { return {Kind::T, 0, std::move(s), {}}; }
  static LAction td0(IntVec r) { return {Kind::TD0, 0, std::move(r), {}}; }
};

LoopVec apply(const TwistedSetup& s, const GradedModule& m, const LAction& a, const LoopVec& v);

/// Same action computed on the factors: a vector is k -> (dim V1) x (dim V2) matrix.
using FactorVec = std::map<IntVec, Matrix>;
FactorVec evaluation_action(const TwistedSetup& s, const GlRep& v1, const GnaughtRep& v2, const RatVec& alpha,
                            const Rational& d0, const LAction& a, const FactorVec& v);
LoopVec flatten(const FactorVec& v);

struct RelationResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// The five defining brackets of L checked as operator identities on random vectors of L(V~).
std::vector<RelationResult> relation_residuals(const TwistedSetup& s, const GradedModule& m, std::size_t samples,
                                               Rng& rng);

LAction random_action(const TwistedSetup& s, Rng& rng);
LoopVec random_loop_vector(const TwistedSetup& s, const GradedModule& m, Rng& rng, int terms = 2);

/// Component p of v (in Lambda): the terms e_i (x) t^l with l - deg(e_i) = p mod Gamma.
LoopVec graded_component(const TwistedSetup& s, const GradedModule& m, const IntVec& p, const LoopVec& v);
/// dim of the joint eigenspace {D(u,0) w = (u, k + alpha) w} inside component p.
std::size_t weight_slice_dim(const TwistedSetup& s, const GradedModule& m, const IntVec& p, const IntVec& k);
/// dim V~_kbar.
std::size_t graded_dim(const TwistedSetup& s, const GradedModule& m, const IntVec& k);

/// p-graded automorphism of V~: theta(V~_k) = V~_{k-p}.
struct GradedAutomorphism {
  Matrix theta;
  IntVec shift;
};

/// N_p = order of p in Lambda.
std::int64_t shift_order(const IntVec& p, const IntVec& orders);
/// Canonical (lexicographically least) representative of k in Z^n / (Gamma + Z p).
IntVec lambda_p_class(const IntVec& k, const IntVec& orders, const IntVec& p);
/// q_0 = 0, q_1, ... : the distinct canonical representatives, in lexicographic order.
std::vector<IntVec> lambda_p_reps(const IntVec& orders, const IntVec& p);

void validate_theta(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th);

struct ThetaDecomposition {
  std::int64_t order = 1;
  CycloScalar zeta;               // primitive N_p-th root of unity
  std::vector<Matrix> projectors; // P_i = (1/N_p) sum_j zeta^{ij} theta^j
  std::vector<std::vector<Vector>> bases;  // basis of M~_i
};

ThetaDecomposition theta_eigendecompose(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th);

/// Fiber of M_i^l at the monomial t^mono: P_i(V~ restricted to the Lambda_p-class of mono - q_l).
std::vector<Vector> component_fiber(const TwistedSetup& s, const GradedModule& m, const GradedAutomorphism& th,
                                    const ThetaDecomposition& dec, std::size_t i, std::size_t l, const IntVec& mono);

/// Basis vectors of V~ whose degree is in the given Lambda_p class.
std::vector<std::size_t> lambda_p_slice(const TwistedSetup& s, const GradedModule& m, const IntVec& p,
                                        const IntVec& cls);

struct TriangularParts {
  TauElement minus;
  TauElement zero;
  TauElement plus;
};

/// Split by the sign of alpha + k0 delta_0 (loop part) and of s_0 (central and derivation parts).
TriangularParts classify_triangular(const TwistedSetup& s, const TauElement& x);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace torloop
