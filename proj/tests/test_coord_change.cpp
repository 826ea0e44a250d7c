#include "doctest.h"
#include "oracles.hpp"
#include "torloop/coord_change.hpp"
#include "torloop/random.hpp"
#include "torloop/verify.hpp"

using torloop::IntMatrix;
using torloop::IntVec;
using torloop::LatticeAuto;
using torloop::TauElement;

namespace {

LatticeAuto random_unimodular(torloop::Rng& rng, std::size_t n1) {
  for (;;) {
    IntMatrix b(n1, IntVec(n1));
    for (auto& row : b)
      for (auto& x : row) x = rng.uniform(-3, 3);
    const auto d = torloop::int_det(b);
    if (d == 1 || d == -1) return LatticeAuto::make(b);
  }
}

}  // namespace

TEST_CASE("identity and axis swap") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  torloop::Rng rng(1);
  const auto x = torloop::random_homogeneous(s, rng);
  CHECK(torloop::apply_lattice_auto(s, LatticeAuto::identity(2), x) == x);
  const auto swap = LatticeAuto::make({{0, 1}, {1, 0}});
  CHECK(torloop::apply_lattice_auto(s, swap, TauElement::central_term({0, 0}, 0)) == TauElement::central_term({0, 0}, 1));
  CHECK(torloop::apply_lattice_auto(s, swap, TauElement::loop_term(0, {2, -1})) == TauElement::loop_term(0, {-1, 2}));
  CHECK_THROWS_AS(LatticeAuto::make({{2, 0}, {0, 1}}), torloop::AlgebraError);
  CHECK_THROWS_AS(torloop::apply_lattice_auto(oracle::load_setup("sl3_flip.json"), swap, x), torloop::InputError);
}

TEST_CASE("change of coordinates is an automorphism and a group action") {
  for (const char* f : {"sl2_untwisted.json", "sl2_n2_m23.json"}) {
    const auto s = oracle::load_setup(f);
    if (!s.untwisted()) continue;
    INFO(f);
    torloop::Rng rng(17);
    const std::size_t n1 = s.n() + 1;
    for (int t = 0; t < 80; ++t) {
      const auto b = random_unimodular(rng, n1), c = random_unimodular(rng, n1);
      const auto x = torloop::random_homogeneous(s, rng), y = torloop::random_homogeneous(s, rng);
      CHECK(torloop::apply_lattice_auto(s, b, torloop::tau_bracket(s, x, y)) ==
            torloop::tau_bracket(s, torloop::apply_lattice_auto(s, b, x), torloop::apply_lattice_auto(s, b, y)));
      CHECK(torloop::apply_lattice_auto(s, b, torloop::apply_lattice_auto(s, c, x)) ==
            torloop::apply_lattice_auto(s, b * c, x));
      CHECK(torloop::apply_lattice_auto(s, LatticeAuto::make(b.Binv), torloop::apply_lattice_auto(s, b, x)) == x);
    }
  }
}

TEST_CASE("normalizing a central charge") {
  {
    const auto [b, c] = torloop::normalize_central_charge({5, 0, 0});
    CHECK(c == IntVec{5, 0, 0});
    CHECK(torloop::transform_charge(b, {5, 0, 0}) == c);
  }
  {
    const auto [b, c] = torloop::normalize_central_charge({0, 3});
    CHECK(c == IntVec{3, 0});
    CHECK(std::abs(b.B[1][0]) == 1);
    CHECK(b.B[0][0] == 0);
  }
  CHECK(torloop::normalize_central_charge({4, 6}).second == IntVec{2, 0});
  CHECK(torloop::normalize_central_charge({-4, 6}).second == IntVec{2, 0});
  CHECK_THROWS_AS(torloop::normalize_central_charge({0, 0}), torloop::InputError);

  for (std::size_t len = 1; len <= 3; ++len) {
    IntVec lo(len, -6), hi(len, 6);
    for (const auto& c : torloop::box_points(lo, hi)) {
      if (torloop::is_zero(c)) continue;
      const auto [b, out] = torloop::normalize_central_charge(c);
      IntVec expect(len, 0);
      expect[0] = oracle::gcd_all(c);
      CHECK(out == expect);
      CHECK(torloop::transform_charge(b, c) == out);
      CHECK(std::abs(torloop::int_det(b.B)) == 1);
      CHECK(torloop::int_mul(b.B, b.Binv) == torloop::int_identity(len));
    }
  }
}
