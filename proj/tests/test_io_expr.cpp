#include "doctest.h"
#include "oracles.hpp"
#include "torloop/expr.hpp"
#include "torloop/io.hpp"
#include "torloop/random.hpp"
#include "torloop/verify.hpp"


using torloop::CycloScalar;
using torloop::Rational;
using torloop::TauElement;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("algebra names") {
  CHECK(torloop::algebra_from_name("A2").dim() == 8);
  CHECK(torloop::algebra_from_name("g2").dim() == 14);
  CHECK_THROWS_AS(torloop::algebra_from_name("X9"), torloop::InputError);
  CHECK_THROWS_AS(torloop::algebra_from_name("A"), torloop::InputError);
}

TEST_CASE("scalar json round trip") {
  torloop::Rng rng(4);
  for (std::uint32_t m : {1u, 3u, 4u, 12u}) {
    for (int t = 0; t < 20; ++t) {
      CycloScalar x(0);
      for (std::int64_t e = 0; e < 4; ++e)
        x += CycloScalar(Rational(static_cast<long>(rng.uniform(-5, 5)))) * CycloScalar::root_of_unity(m, e);
      x /= CycloScalar(3);
      CHECK(torloop::scalar_from_json(torloop::scalar_to_json(x), m) == x);
    }
  }
  CHECK(torloop::scalar_from_json(torloop::scalar_to_json(CycloScalar::root_of_unity(3, 1)), 6) ==
        CycloScalar::root_of_unity(6, 2));
  CHECK_THROWS_AS(torloop::scalar_from_json("{\"modulus\": 3}"), torloop::InputError);
}

TEST_CASE("export and reload of structure tables") {
  const auto a1 = torloop::export_algebra(torloop::SimpleAlgebra::build('A', 1));
  CHECK(count(a1, "\"label\"") == 3);
  for (char type : {'A', 'B', 'G'}) {
    const auto g = torloop::SimpleAlgebra::build(type, 2);
    auto h = torloop::SimpleAlgebra::build(type, 2);
    torloop::apply_structure_override(h, torloop::export_algebra(g));
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        CHECK(g.bracket_terms(i, j) == h.bracket_terms(i, j));
        CHECK(g.form_entry(i, j) == h.form_entry(i, j));
      }
  }
  auto g = torloop::SimpleAlgebra::build('A', 2);
  CHECK_THROWS_AS(torloop::apply_structure_override(g, a1), torloop::InputError);
}

TEST_CASE("setup files") {
  const auto s = oracle::load_setup("sl3_flip.json");
  CHECK(s.orders() == torloop::IntVec{2, 1});
  CHECK(s.modulus() == 2);
  const auto q = oracle::load_setup("sl2_quaternionic.json");
  CHECK(q.orders() == torloop::IntVec{1, 2, 2});
  // the Klein four-group fixes nothing in sl2, so g-naught is all of g
  CHECK(q.g_naught().size() == 3);
  CHECK_FALSE(torloop::check_assumptions(q).simple);

  const char* bad[] = {
      R"({"algebra": {"type": "A", "rank": 1}})",
      R"({"algebra": {"type": "A", "rank": 1}, "autos": [{"kind": "identity"}], "orders": [1, 1]})",
      R"({"algebra": {"type": "A", "rank": 2}, "autos": [{"kind": "diagram", "perm": [2, 1]}, {"kind": "identity"}], "orders": [3, 1]})",
      R"({"algebra": {"type": "A", "rank": 1}, "autos": [{"kind": "inner", "coweight": ["1/3"]}, {"kind": "identity"}], "orders": [2, 1]})",
      R"({"algebra": {"type": "A", "rank": 1}, "autos": [{"kind": "matrix", "matrix": [[2,0,0],[0,1,0],[0,0,1]]}, {"kind": "identity"}], "orders": [1, 1]})",
      R"({"algebra": {"type": "A", "rank": 1}, "autos": [{"kind": "sideways"}, {"kind": "identity"}]})",
      "not json",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(torloop::setup_from_json(text), torloop::Error);
  }
  const auto derived = torloop::setup_from_json(
      R"({"algebra": {"type": "A", "rank": 2}, "autos": [{"kind": "diagram", "perm": [2, 1], "order": 2}, {"kind": "identity"}]})");
  CHECK(derived.orders() == torloop::IntVec{2, 1});
}

TEST_CASE("module files") {
  const auto s = oracle::load_setup("sl2_quaternionic.json");
  const auto spec = torloop::module_from_json(s, torloop::read_text_file(std::string(TORLOOP_DATA_DIR) + "/module_adjoint.json"));
  CHECK(spec.module.dim == 4 * s.g_naught().size());
  CHECK(spec.alpha == torloop::RatVec{Rational(1, 2), Rational(-1)});
  CHECK_FALSE(spec.theta.has_value());
  CHECK_THROWS_AS(torloop::module_from_json(s, R"({"gl": "spinor", "gnaught": "trivial"})"), torloop::InputError);
  CHECK_THROWS_AS(torloop::module_from_json(s, R"({"gl": {"dim": 1, "matrices": [[[1]]]}, "gnaught": "trivial"})"),
                  torloop::InputError);
}

TEST_CASE("expression grammar") {
  const auto s = oracle::load_setup("sl2_untwisted.json");
  const auto x = torloop::parse_element(s, "e(1)*t0^1*t1^2 + 3*K0@(0,0) + t1^2*d0");
  CHECK(x.loop.size() == 1);
  CHECK(x.loop.at({1, {1, 2}}) == CycloScalar(1));
  CHECK(x.central.at({{0, 0}, 0}) == CycloScalar(3));
  CHECK(x.deriv.at({{0, 2}, 0}) == CycloScalar(1));
  CHECK(torloop::parse_element(s, "K1@(1,0) + t0^1*K1") == TauElement::central_term({1, 0}, 1, CycloScalar(2)));
  CHECK(torloop::parse_scalar("(1 + z^1)*2/3", 3) == (CycloScalar(1) + CycloScalar::root_of_unity(3, 1)) * CycloScalar(Rational(2, 3)));
  CHECK(torloop::parse_scalar("z4^1", 12) == CycloScalar::root_of_unity(12, 3));
  for (const char* bad : {"e(9)", "e(1) + 3", "e(1)*t0^", "K7", "d0@(1,2,3)", "e(1) +", "(1 + e(0))"}) {
    INFO(bad);
    CHECK_THROWS_AS(torloop::parse_element(s, bad), torloop::InputError);
  }
  const auto t = oracle::load_setup("sl3_flip.json");
  CHECK_THROWS_AS(torloop::parse_element(t, "e(7)"), torloop::InputError);
}

TEST_CASE("printed elements parse back") {
  for (const char* f : {"sl2_untwisted.json", "sl3_flip.json", "sl2_quaternionic.json"}) {
    const auto s = oracle::load_setup(f);
    torloop::Rng rng(15);
    for (int t = 0; t < 50; ++t) {
      const auto x = torloop::random_homogeneous(s, rng) + torloop::random_homogeneous(s, rng);
      const auto text = torloop::to_string(s, x);
      INFO(text);
      CHECK(torloop::parse_element(s, text) == x);
    }
  }
}
