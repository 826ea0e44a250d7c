#include "doctest.h"
#include "oracles.hpp"

#include <set>

using torloop::AutoSpec;
using torloop::CycloScalar;
using torloop::IntVec;
using torloop::Matrix;
using torloop::Rational;
using torloop::SimpleAlgebra;
using torloop::TwistedSetup;

namespace {

AutoSpec identity() { return {}; }

AutoSpec flip(std::vector<int> perm, std::int64_t order) {
  AutoSpec a;
  a.kind = AutoSpec::Kind::Diagram;
  a.perm = std::move(perm);
  a.order = order;
  return a;
}

AutoSpec inner(torloop::RatVec cw, std::int64_t order) {
  AutoSpec a;
  a.kind = AutoSpec::Kind::Inner;
  a.coweight = std::move(cw);
  a.order = order;
  return a;
}

std::map<IntVec, std::size_t> dims(const TwistedSetup& s) {
  std::map<IntVec, std::size_t> out;
  for (const auto& [k, idx] : s.eigenspaces()) out[k] = idx.size();
  return out;
}

}  // namespace

TEST_CASE("realized automorphisms") {
  const auto sl2 = SimpleAlgebra::build('A', 1);
  CHECK(torloop::realize_auto(sl2, identity(), 1).is_identity());

  const auto sl3 = SimpleAlgebra::build('A', 2);
  const Matrix f = torloop::realize_auto(sl3, flip({1, 0}, 2), 2);
  CHECK_FALSE(torloop::automorphism_defect(sl3, f).has_value());
  CHECK_FALSE(f.is_identity());
  CHECK((f * f).is_identity());
  // fixed subalgebra = rank of (1 + sigma) / 2
  CHECK(torloop::rank(Matrix::identity(8) + f) == 3);
  CHECK(torloop::rank(Matrix::identity(8) - f) == 5);
}

TEST_CASE("inner automorphism of order two on sl2") {
  const auto sl2 = SimpleAlgebra::build('A', 1);
  const Matrix in = torloop::realize_auto(sl2, inner({Rational(1, 2)}, 2), 2);
  // zeta_2^<lambda, alpha> with lambda = alpha^vee / 2
  CHECK(in(0, 0) == CycloScalar(-1));
  CHECK(in(1, 1) == CycloScalar(-1));
  CHECK(in(2, 2) == CycloScalar(1));
  CHECK(matrix_power(in, 2).is_identity());
}

TEST_CASE("eigenspace bookkeeping") {
  const auto sl2 = SimpleAlgebra::build('A', 1);
  const auto sl3 = SimpleAlgebra::build('A', 2);

  const auto u = TwistedSetup::build(sl2, {identity(), identity()}, {1, 1});
  CHECK(dims(u) == std::map<IntVec, std::size_t>{{{0, 0}, 3}});
  CHECK(u.untwisted());

  const auto t = TwistedSetup::build(sl3, {flip({1, 0}, 2), identity()}, {2, 1});
  CHECK(dims(t) == std::map<IntVec, std::size_t>{{{0, 0}, 3}, {{1, 0}, 5}});

  const auto q = TwistedSetup::build(sl2, {identity(), inner({Rational(1, 2)}, 2)}, {1, 2});
  CHECK(dims(q) == std::map<IntVec, std::size_t>{{{0, 0}, 1}, {{0, 1}, 2}});

  // every adapted vector is a simultaneous eigenvector with the recorded class
  for (const TwistedSetup* s : {&u, &t, &q}) {
    std::size_t total = 0;
    for (const auto& [k, idx] : s->eigenspaces()) total += idx.size();
    CHECK(total == s->algebra().dim());
    for (std::size_t a = 0; a < s->dim(); ++a) {
      for (std::size_t i = 0; i < s->auto_matrices().size(); ++i) {
        auto expect = s->basis(a).chev;
        for (auto& x : expect) x *= s->xi(i).pow(s->basis(a).klass[i]);
        CHECK(s->auto_matrices()[i] * s->basis(a).chev == expect);
      }
    }
  }
}

TEST_CASE("orders must match the automorphisms") {
  const auto sl3 = SimpleAlgebra::build('A', 2);
  CHECK_THROWS_AS(TwistedSetup::build(sl3, {flip({1, 0}, 3), identity()}, {3, 1}), torloop::Error);
  CHECK_THROWS_AS(TwistedSetup::build(sl3, {flip({1, 0}, 2)}, {2, 1}), torloop::Error);
}

TEST_CASE("assumption checker") {
  const auto sl2 = SimpleAlgebra::build('A', 1);
  const auto sl3 = SimpleAlgebra::build('A', 2);
  const auto u = torloop::check_assumptions(TwistedSetup::build(sl2, {identity(), identity()}, {1, 1}));
  CHECK(u.all());

  const auto t = TwistedSetup::build(sl3, {flip({1, 0}, 2), identity()}, {2, 1});
  const auto rt = torloop::check_assumptions(t);
  CHECK(rt.all());
  CHECK(t.root_data().type_b);
  CHECK(t.root_data().type_label == "B1");
  // Delta(g, h(0)) = Delta_0 + 2 Delta_0,sh: weights +-a, +-2a once the zero weight is dropped
  std::set<torloop::RatVec> w(t.root_data().weights.begin(), t.root_data().weights.end());
  CHECK(w.size() == 4);
  CHECK(t.root_data().delta0.size() == 2);

  const auto q = TwistedSetup::build(sl2, {inner({Rational(1, 2)}, 2), identity()}, {2, 1});
  CHECK_FALSE(torloop::check_assumptions(q).simple);
}

TEST_CASE("g-naught") {
  const auto sl2 = SimpleAlgebra::build('A', 1);
  const auto u = TwistedSetup::build(sl2, {identity(), identity()}, {1, 1});
  REQUIRE(u.g_naught().size() == 1);
  CHECK(u.g_naught()[0] == oracle::adapted_of(u, 2).first);

  // simultaneous kernel of (sigma_0 - 1) and ad h(0): computed by a nullspace solve
  const auto t = oracle::load_setup("sl3_flip_spatial.json");
  const auto& g = t.algebra();
  const Matrix s0 = t.auto_matrices()[0];
  const std::size_t D = g.dim();
  Matrix stacked((1 + t.h0().size()) * D, D);
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < D; ++c) stacked(r, c) = s0(r, c) - (r == c ? CycloScalar(1) : CycloScalar(0));
  for (std::size_t hi = 0; hi < t.h0().size(); ++hi) {
    for (std::size_t c = 0; c < D; ++c) {
      const auto col = g.bracket(t.h0()[hi], torloop::GElement::basis(c).to_dense(D));
      for (std::size_t r = 0; r < D; ++r) stacked((1 + hi) * D + r, c) = col[r];
    }
  }
  CHECK(t.g_naught().size() == torloop::nullspace(stacked).size());
  for (auto a : t.g_naught()) CHECK(t.basis(a).klass[0] == 0);
}
