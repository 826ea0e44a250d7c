#include "doctest.h"
#include "oracles.hpp"
#include "torloop/ideals.hpp"
#include "torloop/random.hpp"

using torloop::CycloScalar;
using torloop::DerElem;
using torloop::FdGenerator;
using torloop::IdGenerator;
using torloop::IntVec;
using torloop::LoopElem;
using torloop::RatVec;
using torloop::Rational;

namespace {

IntVec random_gamma(const torloop::TwistedSetup& s, torloop::Rng& rng, int span = 2) {
  IntVec v;
  for (auto m : s.spatial_orders()) v.push_back(m * rng.uniform(-span, span));
  return v;
}

FdGenerator random_fd(const torloop::TwistedSetup& s, torloop::Rng& rng, int d) {
  FdGenerator g;
  g.x = s.g_naught()[rng.index(s.g_naught().size())];
  const IntVec cls = s.spatial_class(g.x);
  for (std::size_t i = 0; i < cls.size(); ++i) g.k.push_back(cls[i] + s.spatial_orders()[i] * rng.uniform(-2, 2));
  for (int i = 0; i < d; ++i) g.rs.push_back(random_gamma(s, rng, 1));
  return g;
}

IdGenerator random_id(const torloop::TwistedSetup& s, torloop::Rng& rng, int d) {
  IdGenerator g;
  for (std::size_t i = 0; i < s.n(); ++i) g.u.push_back(Rational(static_cast<long>(rng.uniform(-2, 2))));
  g.r = random_gamma(s, rng);
  for (int i = 0; i < d; ++i) g.ss.push_back(random_gamma(s, rng, 1));
  return g;
}

}  // namespace

TEST_CASE("inclusion-exclusion expansions") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  torloop::Rng rng(2);
  for (int d = 0; d <= 3; ++d) {
    for (int t = 0; t < 20; ++t) {
      const auto g = random_fd(s, rng, d);
      LoopElem expect;
      oracle::inclusion_exclusion(g.rs, s.n(), [&](int sign, const IntVec& shift) {
        torloop::add_to(expect, torloop::loop_monomial(s, g.x, torloop::add(g.k, shift)), CycloScalar(sign));
      });
      CHECK(torloop::expand_fd(s, g) == expect);
      const auto h = random_id(s, rng, d);
      DerElem dexp;
      oracle::inclusion_exclusion(h.ss, s.n(), [&](int sign, const IntVec& shift) {
        torloop::add_to(dexp, torloop::d_element(h.u, torloop::add(h.r, shift)), CycloScalar(sign));
        torloop::add_to(dexp, torloop::d_element(h.u, IntVec(s.n(), 0)), CycloScalar(-sign));
      });
      CHECK(torloop::expand_id(s, h) == dexp);
    }
  }
  // d = 1 and a doubled step
  const std::size_t x = s.g_naught().front();
  const IntVec k = s.spatial_class(x), r{2, 0};
  LoopElem one = torloop::loop_monomial(s, x, k);
  torloop::add_to(one, torloop::loop_monomial(s, x, torloop::add(k, r)), CycloScalar(-1));
  CHECK(torloop::expand_fd(s, {x, k, {r}}) == one);
  LoopElem two = torloop::loop_monomial(s, x, k);
  torloop::add_to(two, torloop::loop_monomial(s, x, torloop::add(k, r)), CycloScalar(-2));
  torloop::add_to(two, torloop::loop_monomial(s, x, torloop::add(k, {4, 0})));
  CHECK(torloop::expand_fd(s, {x, k, {r, r}}) == two);
}

TEST_CASE("membership") {
  for (const char* f : {"sl2_untwisted.json", "sl2_quaternionic.json", "sl3_flip_spatial.json"}) {
    INFO(f);
    const auto s = oracle::load_setup(f);
    torloop::Rng rng(8);
    for (int d = 1; d <= 3; ++d) {
      for (int t = 0; t < 10; ++t) {
        const auto g = random_fd(s, rng, d);
        const auto x = torloop::expand_fd(s, g);
        CHECK(torloop::member_F_d(s, x, d));
        CHECK(torloop::member_F_d_moments(s, x, d));
        CHECK(torloop::member_F_d(s, x, d - 1));
        const auto h = random_id(s, rng, d);
        const auto y = torloop::expand_id(s, h);
        CHECK(torloop::member_I_d(s, y, d));
        CHECK(torloop::member_I_d_moments(s, y, d));
      }
      const std::size_t x0 = s.g_naught().front();
      const auto single = torloop::loop_monomial(s, x0, s.spatial_class(x0));
      CHECK_FALSE(torloop::member_F_d(s, single, d));
      CHECK_FALSE(torloop::member_F_d_moments(s, single, d));
    }
    // I_1 = I
    const IntVec r = random_gamma(s, rng);
    DerElem i1 = torloop::d_element({Rational(1)}, r);
    if (s.n() == 1) {
      torloop::add_to(i1, torloop::d_element({Rational(1)}, {0}), CycloScalar(-1));
      CHECK(torloop::member_I_d(s, i1, 1));
    }
  }
}

TEST_CASE("brackets descend the chains") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  torloop::Rng rng(13);
  bool nonzero = false;
  for (int d = 1; d <= 2; ++d) {
    for (int t = 0; t < 10; ++t) {
      const auto a = torloop::expand_fd(s, random_fd(s, rng, d)), b = torloop::expand_fd(s, random_fd(s, rng, d));
      const auto ab = torloop::loop_bracket(s, a, b);
      nonzero = nonzero || !ab.empty();
      CHECK(torloop::member_F_d(s, ab, d + 1));
      CHECK(torloop::member_F_d_moments(s, ab, d + 1));
    }
  }
  CHECK(nonzero);
}

TEST_CASE("gl_n image") {
  CHECK(torloop::gl_n_image({Rational(1)}, {3}) == torloop::Matrix::identity(1) * CycloScalar(3));
  CHECK(torloop::gl_n_image({Rational(1), Rational(2)}, {0, 0}).is_zero());
  const auto m = torloop::gl_n_image({Rational(1), Rational(2)}, {3, 5});
  // r u^T
  CHECK(m(0, 0) == CycloScalar(3));
  CHECK(m(0, 1) == CycloScalar(6));
  CHECK(m(1, 0) == CycloScalar(5));
  CHECK(m(1, 1) == CycloScalar(10));

  torloop::Rng rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int t = 0; t < 50; ++t) {
      RatVec u, v;
      IntVec r, q;
      for (std::size_t i = 0; i < n; ++i) {
        u.push_back(Rational(static_cast<long>(rng.uniform(-3, 3))));
        v.push_back(Rational(static_cast<long>(rng.uniform(-3, 3))));
        r.push_back(rng.uniform(-3, 3));
        q.push_back(rng.uniform(-3, 3));
      }
      // I(u, r) = D(u, r) - D(u, 0); the map to gl_n is a homomorphism on I
      DerElem a = torloop::d_element(u, r), b = torloop::d_element(v, q);
      torloop::add_to(a, torloop::d_element(u, IntVec(n, 0)), CycloScalar(-1));
      torloop::add_to(b, torloop::d_element(v, IntVec(n, 0)), CycloScalar(-1));
      CHECK(torloop::gl_n_image(n, torloop::der_bracket(a, b)) ==
            torloop::commutator(torloop::gl_n_image(n, a), torloop::gl_n_image(n, b)));
    }
  }
}

TEST_CASE("derivations act on the loop part") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  const std::size_t x = s.g_naught().front();
  const IntVec l{2, 2};
  const auto cls = s.spatial_class(x);
  const IntVec k{cls[0] + 2, cls[1] + 2};
  const auto act = torloop::der_act(torloop::d_element({Rational(1), Rational(-1, 2)}, l), torloop::loop_monomial(s, x, k));
  const Rational ul = Rational(k[0]) - Rational(k[1], 2);
  CHECK(act == torloop::loop_monomial(s, x, torloop::add(k, l), CycloScalar(ul)));
}
