#include "cli.hpp"
#include "doctest.h"
#include "torloop/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = torloop::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TORLOOP_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("torloop_cli_" + name)).string();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("export writes the sl2 basis") {
  const auto path = temp_path("a1.json");
  const auto r = run({"export", "--algebra", "A1", "--out", path});
  CHECK(r.code == 0);
  const auto text = torloop::read_text_file(path);
  CHECK(count(text, "\"label\"") == 3);
  CHECK(text.find("\"dim\": 3") != std::string::npos);
}

TEST_CASE("jacobi passes on untwisted sl2") {
  const auto r = run({"verify", "jacobi", "--setup", data("sl2_untwisted.json"), "--samples", "1000", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("a corrupted structure file fails with a named triple") {
  const auto good = temp_path("a1_good.json"), bad = temp_path("a1_bad.json");
  REQUIRE(run({"export", "--algebra", "A1", "--out", good}).code == 0);
  std::string text = torloop::read_text_file(good);
  // [e, h] = -2e becomes -3e, breaking antisymmetry of the table
  const auto pos = text.find("\"c\": \"-2\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 9, "\"c\": \"-3\"");
  torloop::write_text_file(bad, text);
  const auto r = run({"verify", "jacobi", "--setup", data("sl2_untwisted.json"), "--structure", bad, "--samples", "20",
                      "--seed", "7", "--text"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL structure-jacobi") != std::string::npos);
  CHECK(r.out.find("basis triple (") != std::string::npos);

  const auto clean = run({"verify", "jacobi", "--setup", data("sl2_untwisted.json"), "--structure", good, "--samples",
                          "20", "--seed", "7"});
  CHECK(clean.code == 0);
}

TEST_CASE("identical seeds give identical reports") {
  const std::vector<std::string> args{"verify", "cocycle", "--setup", data("sl3_flip.json"), "--samples", "30", "--seed", "3"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  setenv("TORLOOP_SEED", "3", 1);
  const auto c = run({"verify", "cocycle", "--setup", data("sl3_flip.json"), "--samples", "30"});
  unsetenv("TORLOOP_SEED");
  CHECK(c.out == a.out);
  const auto d = run({"verify", "cocycle", "--setup", data("sl3_flip.json"), "--samples", "30", "--seed", "4"});
  CHECK(d.out != a.out);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run({"verify", "jacobi", "--setup", data("missing.json")}).code == 2);
  CHECK(run({"verify", "nosuch", "--setup", data("sl2_untwisted.json")}).code == 2);
  CHECK(run({"bracket", "--setup", data("sl2_untwisted.json"), "e(9)", "e(0)"}).code == 2);
  CHECK(run({"bracket", "--setup", data("sl2_untwisted.json"), "--phi", "1", "e(0)", "e(1)"}).code == 2);
  CHECK(run({"normalize-charge", "0,0"}).code == 2);
  CHECK(run({"verify", "automorphism", "--setup", data("sl3_flip.json")}).code == 2);
  CHECK(run({"verify", "theta", "--setup", data("sl3_flip_spatial.json")}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("bracket prints the normalized result") {
  const auto r = run({"bracket", "--setup", data("sl2_untwisted.json"), "--text", "e(0)*t1^1", "e(2)*t1^-1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("K1@(0,0)") != std::string::npos);
  const auto phi = run({"bracket", "--setup", data("sl2_untwisted.json"), "--phi", "1,0", "--text", "t0^1*d1", "t0^-1*d1"});
  CHECK(phi.code == 0);
}

TEST_CASE("normalize-charge") {
  const auto r = run({"normalize-charge", "4,6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"charge\"") != std::string::npos);
}

TEST_CASE("module suites run from files") {
  const auto m = run({"verify", "module-relations", "--setup", data("sl2_quaternionic.json"), "--module",
                      data("module_adjoint.json"), "--samples", "20", "--seed", "1"});
  CHECK(m.code == 0);
  const auto th = run({"verify", "theta", "--setup", data("sl3_flip_spatial.json"), "--module", data("module_theta.json"),
                       "--samples", "20", "--seed", "1"});
  CHECK(th.code == 0);
}
