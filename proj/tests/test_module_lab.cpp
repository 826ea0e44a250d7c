#include "doctest.h"
#include "oracles.hpp"
#include "torloop/ideals.hpp"
#include "torloop/module_lab.hpp"

using torloop::CycloScalar;
using torloop::GradedModule;
using torloop::IntVec;
using torloop::LAction;
using torloop::LoopVec;
using torloop::Matrix;
using torloop::RatVec;
using torloop::Rational;
using torloop::TwistedSetup;
using torloop::Vector;

namespace {

LoopVec compose(const TwistedSetup& s, const GradedModule& m, const LAction& a, const LAction& b, const LoopVec& v) {
  return torloop::apply(s, m, a, torloop::apply(s, m, b, v));
}

LoopVec scaled(LoopVec v, const CycloScalar& c) {
  for (auto& [k, x] : v)
    for (auto& e : x) e *= c;
  return v;
}

LoopVec minus(LoopVec a, const LoopVec& b) {
  torloop::add_to(a, b, CycloScalar(-1));
  return a;
}

Rational pair(const RatVec& u, const IntVec& l, const RatVec& alpha) {
  Rational r = 0;
  for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * (Rational(static_cast<long>(l[i])) + alpha[i]);
  return r;
}

IntVec in_class(const TwistedSetup& s, std::size_t x, std::int64_t shift) {
  IntVec k = s.spatial_class(x);
  for (std::size_t i = 0; i < k.size(); ++i) k[i] += shift * s.spatial_orders()[i];
  return k;
}

}  // namespace

TEST_CASE("presets are representations") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  for (const auto& v1 : {torloop::gl_trivial(2), torloop::gl_natural(2), torloop::gl_adjoint(2)}) {
    for (const auto& v2 : {torloop::gnaught_trivial(s), torloop::gnaught_adjoint(s)}) {
      CHECK_NOTHROW(torloop::validate_module(s, torloop::tensor_module(s, v1, v2, {Rational(1, 2), Rational(-1)}, Rational(3))));
    }
  }
  auto bad = torloop::gl_natural(2);
  bad.e[1] = bad.e[2];
  CHECK_THROWS_AS(torloop::validate_module(s, torloop::tensor_module(s, bad, torloop::gnaught_trivial(s), {0, 0}, 0)),
                  torloop::InputError);
}

TEST_CASE("single actions") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  const RatVec alpha{Rational(1, 2), Rational(-1)};
  const auto m = torloop::tensor_module(s, torloop::gl_natural(2), torloop::gnaught_adjoint(s), alpha, Rational(5, 3));
  torloop::Rng rng(6);
  const LoopVec v = torloop::random_loop_vector(s, m, rng, 3);

  CHECK(torloop::apply(s, m, LAction::t({0, 0}), v) == v);

  LoopVec td0 = scaled(v, CycloScalar(Rational(5, 3)));
  LoopVec shifted;
  for (const auto& [k, x] : td0) shifted[torloop::add(k, {2, -2})] = x;
  CHECK(torloop::apply(s, m, LAction::td0({2, -2}), v) == shifted);

  // D(u, 0) with gl_n image zero acts by (u, l + alpha)
  const RatVec u{Rational(2), Rational(-1, 3)};
  LoopVec expect;
  for (const auto& [l, x] : v) {
    Vector y = x;
    for (auto& e : y) e *= CycloScalar(pair(u, l, alpha));
    expect[l] = y;
  }
  CHECK(torloop::apply(s, m, LAction::der(u, {0, 0}), v) == expect);

  CHECK_THROWS_AS(torloop::apply(s, m, LAction::t({1, 0}), v), torloop::InputError);
  CHECK_THROWS_AS(torloop::apply(s, m, LAction::der(u, {1, 0}), v), torloop::InputError);
}

TEST_CASE("derivation and loop commutator") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  const auto m = torloop::tensor_module(s, torloop::gl_adjoint(2), torloop::gnaught_adjoint(s), {Rational(1), Rational(0)}, 0);
  torloop::Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const std::size_t x = s.g_naught()[rng.index(s.g_naught().size())];
    const IntVec k = in_class(s, x, rng.uniform(-2, 2));
    const RatVec u{Rational(static_cast<long>(rng.uniform(-2, 2))), Rational(static_cast<long>(rng.uniform(-2, 2)))};
    const IntVec r{2 * rng.uniform(-1, 1), 2 * rng.uniform(-1, 1)};
    const LoopVec v = torloop::random_loop_vector(s, m, rng);
    const LoopVec lhs = minus(compose(s, m, LAction::der(u, r), LAction::loop(x, k), v),
                              compose(s, m, LAction::loop(x, k), LAction::der(u, r), v));
    Rational uk = 0;
    for (std::size_t i = 0; i < 2; ++i) uk += u[i] * static_cast<long>(k[i]);
    const LoopVec rhs = scaled(torloop::apply(s, m, LAction::loop(x, torloop::add(k, r)), v), CycloScalar(uk));
    CHECK(torloop::is_zero(minus(lhs, rhs)));
  }
}

TEST_CASE("scalar evaluation module") {
  const auto s = oracle::load_setup("sl2_n2_m23.json");
  const torloop::GlRep v1 = torloop::gl_trivial(2);
  const torloop::GnaughtRep v2 = torloop::gnaught_trivial(s);
  torloop::FactorVec v;
  v[{1, -4}] = Matrix::identity(1) * CycloScalar(7);
  const RatVec u{Rational(3), Rational(1, 2)};
  const auto out = torloop::evaluation_action(s, v1, v2, {0, 0}, 0, LAction::der(u, {2, 3}), v);
  torloop::FactorVec expect;
  expect[{3, -1}] = Matrix::identity(1) * CycloScalar(7 * (3 - 2));
  CHECK(out == expect);
}

TEST_CASE("loop action applies rho2 and shifts") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  const auto v1 = torloop::gl_natural(2);
  const auto v2 = torloop::gnaught_adjoint(s);
  const std::size_t x = s.g_naught().back();
  const IntVec k = in_class(s, x, 1);
  torloop::FactorVec v;
  Matrix a(v1.dim, v2.dim);
  a(0, 0) = CycloScalar(1);
  a(1, v2.dim - 1) = CycloScalar(-2);
  v[{0, 0}] = a;
  const auto out = torloop::evaluation_action(s, v1, v2, {0, 0}, 0, LAction::loop(x, k), v);
  REQUIRE(out.size() == 1);
  CHECK(out.begin()->first == k);
  CHECK(out.begin()->second == a * v2.x.at(x).transpose());
}

TEST_CASE("flattened evaluation action equals the module action") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  torloop::Rng rng(12);
  const auto v1 = torloop::gl_adjoint(2);
  const auto v2 = torloop::gnaught_adjoint(s);
  const RatVec alpha{Rational(1, 2), Rational(-1)};
  const auto m = torloop::tensor_module(s, v1, v2, alpha, Rational(2));
  for (int t = 0; t < 60; ++t) {
    torloop::FactorVec v;
    for (int j = 0; j < 2; ++j) {
      Matrix a(v1.dim, v2.dim);
      for (std::size_t r = 0; r < v1.dim; ++r)
        for (std::size_t c = 0; c < v2.dim; ++c) a(r, c) = CycloScalar(rng.uniform(-2, 2));
      v[{rng.uniform(-3, 3), rng.uniform(-3, 3)}] = a;
    }
    const LAction act = torloop::random_action(s, rng);
    CHECK(torloop::flatten(torloop::evaluation_action(s, v1, v2, alpha, Rational(2), act, v)) ==
          torloop::apply(s, m, act, torloop::flatten(v)));
  }
}

TEST_CASE("relations hold on the preset battery") {
  for (const char* f : {"sl2_quaternionic.json", "sl2_n2_m23.json"}) {
    const auto s = oracle::load_setup(f);
    torloop::Rng rng(31);
    for (const auto& v1 : {torloop::gl_trivial(2), torloop::gl_natural(2), torloop::gl_adjoint(2)})
      for (const auto& v2 : {torloop::gnaught_trivial(s), torloop::gnaught_adjoint(s)})
        for (const RatVec& alpha : {RatVec{0, 0}, RatVec{1, 0}, RatVec{Rational(1, 2), -1}}) {
          const auto m = torloop::tensor_module(s, v1, v2, alpha, Rational(1, 3));
          for (const auto& r : torloop::relation_residuals(s, m, 25, rng)) {
            INFO(f << " " << r.name << " " << r.first_failure);
            CHECK(r.failures == 0);
            CHECK(r.samples == 25);
          }
        }
  }
}

TEST_CASE("graded components") {
  const auto s = oracle::load_setup("sl2_n2_m23.json");
  const auto m = torloop::tensor_module(s, torloop::gl_natural(2), torloop::gnaught_adjoint(s), {1, 0}, 0);
  torloop::Rng rng(3);
  const auto classes = torloop::box_points({0, 0}, {1, 2});
  CHECK(classes.size() == 6);
  for (int t = 0; t < 40; ++t) {
    const LoopVec v = torloop::random_loop_vector(s, m, rng, 4);
    LoopVec sum;
    for (const auto& p : classes) {
      const LoopVec c = torloop::graded_component(s, m, p, v);
      torloop::add_to(sum, c);
      const LAction a = torloop::random_action(s, rng);
      const LoopVec ac = torloop::apply(s, m, a, c);
      CHECK(torloop::graded_component(s, m, p, ac) == ac);
    }
    CHECK(torloop::is_zero(minus(sum, v)));
  }
  // dim V~_k = dim of the weight slice at t^k in component 0
  for (const auto& k : torloop::box_points({-2, -2}, {2, 2})) {
    CHECK(torloop::weight_slice_dim(s, m, {0, 0}, k) == torloop::graded_dim(s, m, k));
  }
}

TEST_CASE("identity theta has one component") {
  const auto s = oracle::load_setup("sl3_flip_spatial.json");
  const auto m = torloop::tensor_module(s, torloop::gl_natural(1), torloop::gnaught_adjoint(s), {0}, 0);
  const torloop::GradedAutomorphism id{Matrix::identity(m.dim), {0}};
  CHECK_NOTHROW(torloop::validate_theta(s, m, id));
  const auto dec = torloop::theta_eigendecompose(s, m, id);
  CHECK(dec.order == 1);
  REQUIRE(dec.bases.size() == 1);
  CHECK(dec.bases[0].size() == m.dim);
}

TEST_CASE("order two theta on a four dimensional module") {
  const auto s = oracle::load_setup("sl3_flip_spatial.json");
  const auto spec = torloop::module_from_json(s, torloop::read_text_file(std::string(TORLOOP_DATA_DIR) + "/module_theta.json"));
  REQUIRE(spec.theta.has_value());
  const auto& m = spec.module;
  const auto& th = *spec.theta;
  CHECK(m.dim == 4);
  CHECK(torloop::shift_order(th.shift, s.spatial_orders()) == 2);
  const auto dec = torloop::theta_eigendecompose(s, m, th);
  CHECK(dec.order == 2);
  REQUIRE(dec.bases.size() == 2);
  CHECK(dec.bases[0].size() + dec.bases[1].size() == 4);
  for (std::size_t i = 0; i < 2; ++i) {
    const CycloScalar ev = dec.zeta.pow(-static_cast<std::int64_t>(i));
    for (const auto& b : dec.bases[i]) {
      Vector expect = b;
      for (auto& e : expect) e *= ev;
      CHECK(th.theta * b == expect);
    }
  }
  Matrix sum(4, 4);
  for (const auto& p : dec.projectors) sum += p;
  CHECK(sum.is_identity());
  CHECK(torloop::lambda_p_reps(s.spatial_orders(), th.shift) == std::vector<IntVec>{{0}});

  auto bad = th;
  bad.theta = Matrix::identity(4) * CycloScalar(2);
  CHECK_THROWS_AS(torloop::validate_theta(s, m, bad), torloop::InputError);
}

TEST_CASE("Lambda_p classes") {
  const IntVec orders{2, 3};
  CHECK(torloop::shift_order({1, 1}, orders) == 6);
  CHECK(torloop::shift_order({0, 0}, orders) == 1);
  CHECK(torloop::lambda_p_reps(orders, {1, 1}).size() == 1);
  CHECK(torloop::lambda_p_reps(orders, {1, 0}).size() == 3);
  CHECK(torloop::lambda_p_class({5, 7}, orders, {1, 0}) == IntVec{0, 1});
  CHECK(torloop::lambda_p_reps(orders, {0, 0}).size() == 6);
}

TEST_CASE("triangular split") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const std::size_t h = oracle::adapted_of(s, 2).first, e = oracle::adapted_of(s, 0).first;
  const auto x = torloop::TauElement::loop_term(h, {0, 3});
  CHECK(torloop::classify_triangular(s, x).zero == x);
  const auto ep = torloop::TauElement::loop_term(e, {1, 0});
  CHECK(torloop::classify_triangular(s, ep).plus == ep);
  const auto e0 = torloop::TauElement::loop_term(e, {0, -2});
  CHECK(torloop::classify_triangular(s, e0).plus == e0);
  const auto k = torloop::TauElement::central_term({-1, 2}, 1);
  CHECK(torloop::classify_triangular(s, k).minus == k);
  const auto mixed = ep + x + k;
  const auto parts = torloop::classify_triangular(s, mixed);
  CHECK(parts.minus + parts.zero + parts.plus == mixed);
}
