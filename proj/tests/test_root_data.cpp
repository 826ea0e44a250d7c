#include "doctest.h"
#include "oracles.hpp"
#include "torloop/root_data.hpp"

using torloop::HElement;
using torloop::IntVec;
using torloop::RatVec;
using torloop::Rational;
using torloop::RootLabel;
using torloop::TwistedSetup;
using torloop::WeightFunctional;

namespace {

RatVec weight_of(const TwistedSetup& s, std::size_t adapted) { return *torloop::rational_weight(s.basis(adapted).weight); }

HElement add(HElement a, const HElement& b) {
  for (std::size_t i = 0; i < a.h0.size(); ++i) a.h0[i] += b.h0[i];
  for (std::size_t i = 0; i < a.K.size(); ++i) {
    a.K[i] += b.K[i];
    a.d[i] += b.d[i];
  }
  return a;
}

}  // namespace

TEST_CASE("form on H*") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  CHECK(torloop::form_hstar(s, torloop::delta(s, 1), torloop::big_lambda(s, 1)) == 1);
  CHECK(torloop::form_hstar(s, torloop::delta(s, 0) + torloop::delta(s, 1), torloop::delta(s, 0) - torloop::delta(s, 1)) == 0);
  CHECK(torloop::form_hstar(s, torloop::delta(s, 0), torloop::delta(s, 1)) == 0);
  const RatVec alpha = weight_of(s, oracle::adapted_of(s, 0).first);
  const auto a = torloop::functional_of(s, {alpha, {0, 0}});
  CHECK(torloop::form_hstar(s, a, a) == 2);
  CHECK(torloop::form_hstar(s, a, torloop::delta(s, 0)) == 0);
}

TEST_CASE("coroots") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const RatVec alpha = weight_of(s, oracle::adapted_of(s, 0).first);
  const HElement av = torloop::coroot(s, {alpha, {0, 0}});
  CHECK(av.K == RatVec{0, 0});
  CHECK(av.d == RatVec{0, 0});
  CHECK(torloop::evaluate(torloop::functional_of(s, {alpha, {0, 0}}), av) == 2);
  HElement k0{RatVec(av.h0.size(), Rational(0)), {1, 0}, {0, 0}};
  CHECK(torloop::coroot(s, {alpha, {1, 0}}) == add(av, k0));
  CHECK_THROWS_AS(torloop::coroot(s, {RatVec{0}, {1, 0}}), torloop::InputError);
}

TEST_CASE("short roots of the enhanced B1 system") {
  const auto s = oracle::load_setup("sl3_flip.json");
  const auto& rd = s.root_data();
  REQUIRE(rd.type_b);
  Rational lmin = 100, lmax = 0;
  for (const auto& w : rd.weights) {
    lmin = std::min(lmin, torloop::weight_inner(rd, w, w));
    lmax = std::max(lmax, torloop::weight_inner(rd, w, w));
  }
  // weights are a and 2a, so lengths differ by a factor 4
  CHECK(lmax == 4 * lmin);
  RatVec sh;
  for (const auto& w : rd.delta0) {
    if (torloop::weight_inner(rd, w, w) == lmin) sh = w;
  }
  REQUIRE_FALSE(sh.empty());
  const HElement cv = torloop::coroot(s, {sh, {1, 0}});
  CHECK(cv.K[0] == Rational(2) / lmin);
  CHECK(torloop::evaluate(torloop::functional_of(s, {sh, {1, 0}}), cv) == 2);
  CHECK(torloop::root_space_dim(s, {sh, {1, 0}}) > 0);
  CHECK(torloop::is_root(s, {sh, {1, 0}}));
}

TEST_CASE("reflections") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const RatVec alpha = weight_of(s, oracle::adapted_of(s, 0).first);
  const RootLabel a{alpha, {0, 0}};
  const auto fa = torloop::functional_of(s, a);
  CHECK(torloop::reflect(s, a, fa) == Rational(-1) * fa);
  CHECK(torloop::reflect(s, a, torloop::big_lambda(s, 0)) == torloop::big_lambda(s, 0));

  const RootLabel ad{alpha, {1, 0}};
  const Rational c0(3);
  const WeightFunctional lam = Rational(1, 2) * fa + c0 * torloop::big_lambda(s, 0) + torloop::delta(s, 1);
  const Rational lam_av = torloop::evaluate(lam, torloop::coroot(s, a));
  const WeightFunctional expect = lam - (lam_av + c0 * Rational(2) / torloop::form_hstar(s, fa, fa)) * torloop::functional_of(s, ad);
  CHECK(torloop::reflect(s, ad, lam) == expect);
}

TEST_CASE("root space dimensions") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const RatVec alpha = weight_of(s, oracle::adapted_of(s, 0).first);
  const RatVec zero(alpha.size(), Rational(0));
  for (const auto& deg : torloop::box_points({-1, -1}, {1, 1})) {
    CHECK(torloop::root_space_dim(s, {alpha, deg}) == 1);
    CHECK(torloop::root_space_dim(s, {torloop::rat_scale(-1, alpha), deg}) == 1);
    CHECK_FALSE(torloop::is_root(s, {torloop::rat_scale(2, alpha), deg}));
  }
  // tau_0 = H
  CHECK(torloop::root_space_dim(s, {zero, {0, 0}}) == s.h0().size() + 4);
  // h (x) t^k, the n surviving K_i modulo dA, and n+1 derivations
  CHECK(torloop::root_space_dim(s, {zero, {1, 0}}) == 1 + 1 + 2);
  const auto spaces = torloop::root_spaces(s, {1, 1});
  CHECK(spaces.size() == 27);
}

TEST_CASE("partial order") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const RatVec alpha = weight_of(s, oracle::adapted_of(s, 0).first);
  const auto lam = torloop::big_lambda(s, 0) + Rational(1, 3) * torloop::delta(s, 0);
  const auto a = torloop::functional_of(s, {alpha, {0, 0}});
  CHECK(torloop::leq(s, lam, lam));
  CHECK(torloop::leq(s, lam, lam + a));
  CHECK_FALSE(torloop::leq(s, lam, lam - a));
  CHECK_FALSE(torloop::leq(s, lam, lam + torloop::delta(s, 1)));
  CHECK(torloop::leq(s, lam, lam + torloop::delta(s, 0)));
}

TEST_CASE("real roots in a box: pairing, involution, form, closure") {
  for (const char* f : {"sl2_untwisted.json", "sl3_flip.json", "sl2_n2_m23.json"}) {
    INFO(f);
    const auto s = oracle::load_setup(f);
    const IntVec box(s.n() + 1, s.n() >= 2 ? 1 : 3);
    const auto lam = torloop::big_lambda(s, 0) + Rational(2) * torloop::delta(s, 0);
    for (const auto& [g, dim] : torloop::root_spaces(s, box)) {
      if (!g.is_real()) continue;
      const auto fg = torloop::functional_of(s, g);
      CHECK(torloop::evaluate(fg, torloop::coroot(s, g)) == 2);
      CHECK(torloop::reflect(s, g, torloop::reflect(s, g, lam)) == lam);
      CHECK(torloop::form_hstar(s, torloop::reflect(s, g, lam), torloop::reflect(s, g, fg)) == torloop::form_hstar(s, lam, fg));
      for (const auto& [h, dh] : torloop::root_spaces(s, box)) {
        if (!h.is_real()) continue;
        const auto image = torloop::label_of(torloop::reflect(s, g, torloop::functional_of(s, h)));
        REQUIRE(image.has_value());
        CHECK(torloop::is_root(s, *image));
      }
    }
  }
}
