#include "doctest.h"
#include "oracles.hpp"
#include "torloop/random.hpp"
#include "torloop/toroidal.hpp"
#include "torloop/verify.hpp"

using torloop::AxisMap;
using torloop::CocycleParams;
using torloop::CycloScalar;
using torloop::IntVec;
using torloop::Rational;
using torloop::TauElement;
using torloop::TwistedSetup;

namespace {

TauElement loop_of(const TwistedSetup& s, const oracle::M2& m, const IntVec& deg) {
  TauElement x;
  const auto c = oracle::sl2_coords(m);
  for (std::size_t i = 0; i < 3; ++i) {
    if (c[i] == 0) continue;
    const auto [a, f] = oracle::adapted_of(s, i);
    x += (CycloScalar(c[i]) / f) * TauElement::loop_term(a, deg);
  }
  return x;
}

oracle::M2 random_m2(torloop::Rng& rng) {
  const auto r = [&] { return Rational(static_cast<long>(rng.uniform(-3, 3))); };
  const Rational a = r();
  return {a, r(), r(), -a};
}

}  // namespace

TEST_CASE("central normal form") {
  AxisMap raw;
  raw[{{1, 0}, 0}] = CycloScalar(1);
  CHECK(torloop::central_normal_form(raw).empty());

  raw.clear();
  raw[{{0, 0}, 1}] = CycloScalar(3);
  CHECK(torloop::central_normal_form(raw) == raw);

  raw.clear();
  raw[{{1, 1}, 0}] = CycloScalar(1);
  CHECK(torloop::central_normal_form(raw) == raw);
  raw.clear();
  raw[{{1, 1}, 1}] = CycloScalar(1);
  AxisMap expect;
  expect[{{1, 1}, 0}] = CycloScalar(-1);
  CHECK(torloop::central_normal_form(raw) == expect);

  // sum_i k_i t^k K_i is zero modulo dA at every degree
  torloop::Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    IntVec k{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    AxisMap exact;
    for (std::size_t i = 0; i < 3; ++i) {
      if (k[i] != 0) exact[{k, i}] = CycloScalar(k[i]);
    }
    CHECK(torloop::central_normal_form(exact).empty());
  }
}

TEST_CASE("loop bracket against the matrix model") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  {
    const auto a = loop_of(s, oracle::sl2_e(), {1, 1});
    const auto b = loop_of(s, oracle::sl2_f(), {-1, -1});
    TauElement expect = loop_of(s, oracle::sl2_h(), {0, 0});
    expect += TauElement::central_term({0, 0}, 0) + TauElement::central_term({0, 0}, 1);
    CHECK(torloop::tau_bracket(s, a, b) == expect);
  }
  torloop::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const oracle::M2 x = random_m2(rng), y = random_m2(rng);
    const IntVec k{rng.uniform(-2, 2), rng.uniform(-2, 2)}, l{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const IntVec kl = torloop::add(k, l);
    TauElement expect = loop_of(s, oracle::bracket(x, y), kl);
    const Rational xy = oracle::trace_form(x, y);
    AxisMap raw;
    for (std::size_t i = 0; i < 2; ++i) {
      if (xy * k[i] != 0) raw[{kl, i}] += CycloScalar(xy * k[i]);
    }
    expect.central = torloop::central_normal_form(raw);
    CHECK(torloop::tau_bracket(s, loop_of(s, x, k), loop_of(s, y, l)) == expect);
  }
}

TEST_CASE("derivations act by degree") {
  const auto s = oracle::load_setup("sl3_flip.json");
  const std::size_t x = s.eigenspaces().at({1, 0}).front();
  for (std::int64_t k0 : {-3, -1, 1, 3}) {
    for (std::int64_t k1 : {-2, 0, 5}) {
      const auto d = TauElement::deriv_term({2, 0}, 0);
      const auto r = torloop::tau_bracket(s, d, TauElement::loop_term(x, {k0, k1}));
      CHECK(r == CycloScalar(k0) * TauElement::loop_term(x, {k0 + 2, k1}));
      const auto r1 = torloop::tau_bracket(s, TauElement::deriv_term({0, 3}, 1), TauElement::loop_term(x, {k0, k1}));
      CHECK(r1 == CycloScalar(k1) * TauElement::loop_term(x, {k0, k1 + 3}));
    }
  }
}

TEST_CASE("cocycle values") {
  AxisMap z = torloop::cocycle_value({0, 0}, 0, {0, 0}, 1, 1);
  CHECK(z.empty());
  AxisMap expect;
  expect[{{0, 0}, 1}] = CycloScalar(-8);
  CHECK(torloop::cocycle_value({0, 2}, 1, {0, -2}, 1, 2) == expect);

  torloop::Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const IntVec r{rng.uniform(-3, 3), rng.uniform(-3, 3)}, q{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const std::size_t a = rng.index(2), b = rng.index(2);
    for (int which : {1, 2}) {
      AxisMap sum = torloop::cocycle_value(r, a, q, b, which);
      for (const auto& [key, c] : torloop::cocycle_value(q, b, r, a, which)) sum[key] += c;
      CHECK(torloop::central_normal_form(sum).empty());
    }
  }
}

TEST_CASE("identities on random homogeneous triples") {
  const char* files[] = {"sl2_untwisted.json", "sl2_n2_m23.json", "sl3_flip.json", "sl2_quaternionic.json"};
  torloop::Rng rng(21);
  for (const char* f : files) {
    INFO(f);
    const auto s = oracle::load_setup(f);
    for (int t = 0; t < 60; ++t) {
      const CocycleParams phi{CycloScalar(rng.uniform(-3, 3)), CycloScalar(rng.uniform(-3, 3))};
      const auto a = torloop::random_homogeneous(s, rng), b = torloop::random_homogeneous(s, rng),
                 c = torloop::random_homogeneous(s, rng);
      CHECK(torloop::jacobi_residual(s, a, b, c, phi).is_zero());
      CHECK(torloop::jacobi_residual(s, a, a, c, phi).is_zero());
      const auto ab = torloop::tau_bracket(s, a, b, phi);
      CHECK((ab + torloop::tau_bracket(s, b, a, phi)).is_zero());
      CHECK(torloop::tau_bracket(s, a, a, phi).is_zero());
      if (!ab.is_zero()) {
        const auto da = torloop::homogeneous_degree(a), db = torloop::homogeneous_degree(b);
        REQUIRE(da.has_value());
        REQUIRE(db.has_value());
        CHECK(torloop::homogeneous_degree(ab) == torloop::add(*da, *db));
      }
      torloop::validate_element(s, ab);
    }
  }
}

TEST_CASE("grading violations are rejected") {
  const auto s = oracle::load_setup("sl3_flip.json");
  const std::size_t odd = s.eigenspaces().at({1, 0}).front();
  CHECK_THROWS_AS(torloop::validate_element(s, TauElement::loop_term(odd, {0, 0})), torloop::InputError);
  CHECK_THROWS_AS(torloop::validate_element(s, TauElement::deriv_term({1, 0}, 0)), torloop::InputError);
  CHECK_NOTHROW(torloop::validate_element(s, TauElement::loop_term(odd, {1, 0})));
  CHECK_NOTHROW(torloop::validate_element(s, TauElement::central_term({1, 0}, 1)));
}
