#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torloop/twist.hpp"

namespace torloop {

/// Element of L(g-naught, sigma): (adapted index of a g-naught vector, k in Z^n) -> coefficient.
using LoopElem = std::map<std::pair<std::size_t, IntVec>, CycloScalar>;
/// Element of Der A(m): (r in Gamma, axis a in 0..n-1) -> coefficient of t^r d_{a+1}.
using DerElem = std::map<std::pair<IntVec, std::size_t>, CycloScalar>;

/// X(k, r_1..r_d) = sum over subsets S of (-1)^|S| X(k + sum_S r_i).
struct FdGenerator {
  std::size_t x = 0;
  IntVec k;
  std::vector<IntVec> rs;
};

/// I_d(u, r, s_1..s_d) = sum over subsets S of (-1)^|S| I(u, r + sum_S s_i), I(u, r) = D(u, r) - D(u, 0).
struct IdGenerator {
  RatVec u;
  IntVec r;
  std::vector<IntVec> ss;
};

/// Inclusive box lo <= k <= hi.
struct Box {
  IntVec lo;
  IntVec hi;
};

LoopElem loop_monomial(const TwistedSetup& s, std::size_t x, const IntVec& k, const CycloScalar& c = CycloScalar(1));
void validate_loop(const TwistedSetup& s, const LoopElem& x);

LoopElem expand_fd(const TwistedSetup& s, const FdGenerator& g);
DerElem expand_id(const TwistedSetup& s, const IdGenerator& g);
DerElem d_element(const RatVec& u, const IntVec& r);

void add_to(LoopElem& a, const LoopElem& b, const CycloScalar& c = CycloScalar(1));
void add_to(DerElem& a, const DerElem& b, const CycloScalar& c = CycloScalar(1));

/// [X(k), Y(l)] = [X, Y](k + l)
LoopElem loop_bracket(const TwistedSetup& s, const LoopElem& a, const LoopElem& b);
/// [D(u,r), D(v,s)] = D((u,s)v - (v,r)u, r+s)
DerElem der_bracket(const DerElem& a, const DerElem& b);
/// D(u,r) X(l) = (u,l) X(l + r)
LoopElem der_act(const DerElem& a, const LoopElem& x);

/// Support box grown by max(d,1) lattice steps on every side.
Box default_box(const TwistedSetup& s, const LoopElem& x, int d);
Box default_box(const TwistedSetup& s, const DerElem& x, int d);

/// Membership in the span of the generators whose whole support lies in the box.
bool member_F_d(const TwistedSetup& s, const LoopElem& x, int d, const std::optional<Box>& box = std::nullopt);
bool member_I_d(const TwistedSetup& s, const DerElem& x, int d, const std::optional<Box>& box = std::nullopt);

/// Independent test: all moments of order < d vanish on each Gamma-coset.
bool member_F_d_moments(const TwistedSetup& s, const LoopElem& x, int d);
bool member_I_d_moments(const TwistedSetup& s, const DerElem& x, int d);

/// Image in gl_n of I(u, r): the matrix r u^T, i.e. sum_{i,j} u_i r_j E_ji.
Matrix gl_n_image(const RatVec& u, const IntVec& r);
/// Image of a general element of I (sum_r r w_r^T).
Matrix gl_n_image(std::size_t n, const DerElem& x);

}  // namespace torloop
