#include <benchmark/benchmark.h>

#include "torloop/ideals.hpp"
#include "torloop/io.hpp"
#include "torloop/module_lab.hpp"
#include "torloop/verify.hpp"

using namespace torloop;

namespace {

TwistedSetup load(const char* name) { return setup_from_json(read_text_file(std::string(TORLOOP_DATA_DIR) + "/" + name)); }

CycloScalar sample(std::uint32_t m, int seed) {
  CycloScalar x(0);
  for (std::int64_t e = 0; e < static_cast<std::int64_t>(m); ++e)
    x += CycloScalar(Rational(static_cast<long>((seed * 7 + e * 3) % 11 - 5), 3)) * CycloScalar::root_of_unity(m, e);
  return x;
}

}  // namespace

static void BM_ScalarMul(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const CycloScalar a = sample(m, 1), b = sample(m, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarMul)->Arg(1)->Arg(4)->Arg(12);

static void BM_ScalarInverse(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const CycloScalar a = sample(m, 3);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_ScalarInverse)->Arg(4)->Arg(12);

static void BM_SetupBuild(benchmark::State& state) {
  const std::string text = read_text_file(std::string(TORLOOP_DATA_DIR) + "/sl3_flip.json");
  for (auto _ : state) benchmark::DoNotOptimize(setup_from_json(text));
}
BENCHMARK(BM_SetupBuild);

static void BM_TauBracket(benchmark::State& state) {
  const auto s = load(state.range(0) ? "sl3_flip.json" : "sl2_untwisted.json");
  Rng rng(1);
  std::vector<TauElement> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(random_homogeneous(s, rng));
  const CocycleParams phi{CycloScalar(2), CycloScalar(-3)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_bracket(s, xs[i % 64], xs[(i + 1) % 64], phi));
    ++i;
  }
}
BENCHMARK(BM_TauBracket)->Arg(0)->Arg(1);

static void BM_JacobiResidual(benchmark::State& state) {
  const auto s = load("sl3_flip.json");
  Rng rng(2);
  std::vector<TauElement> xs;
  for (int i = 0; i < 96; ++i) xs.push_back(random_homogeneous(s, rng));
  const CocycleParams phi{CycloScalar(1), CycloScalar(1)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_residual(s, xs[i % 96], xs[(i + 1) % 96], xs[(i + 2) % 96], phi));
    i += 3;
  }
}
BENCHMARK(BM_JacobiResidual);

static void BM_MemberFd(benchmark::State& state) {
  const auto s = load("sl2_quaternionic.json");
  const int d = static_cast<int>(state.range(0));
  const std::size_t x = s.g_naught().front();
  FdGenerator g{x, s.spatial_class(x), {}};
  for (int i = 0; i < d; ++i) g.rs.push_back({2 * (i % 2), 2});
  const LoopElem a = expand_fd(s, g);
  for (auto _ : state) benchmark::DoNotOptimize(member_F_d(s, a, d));
}
BENCHMARK(BM_MemberFd)->DenseRange(1, 3);

static void BM_ModuleAction(benchmark::State& state) {
  const auto s = load("sl2_quaternionic.json");
  const GradedModule m = tensor_module(s, gl_adjoint(2), gnaught_adjoint(s), {Rational(1, 2), -1}, Rational(1));
  Rng rng(3);
  const LoopVec v = random_loop_vector(s, m, rng, 4);
  const LAction a = LAction::der({Rational(1), Rational(-2)}, {2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(apply(s, m, a, v));
}
BENCHMARK(BM_ModuleAction);

BENCHMARK_MAIN();
