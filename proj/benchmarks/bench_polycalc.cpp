#include <benchmark/benchmark.h>

#include "polycalc/generators.hpp"
#include "polycalc/harness.hpp"
#include "polycalc/lp.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/random.hpp"

namespace {

using namespace polycalc;

HPolyhedron sample_polytope(std::size_t n, std::size_t budget) {
  Rng rng(1, 0, n);
  return random_polytope(rng, zeros(n), budget, false);
}

void BM_SolveLp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const HPolyhedron p = sample_polytope(n, 2 * n);
  Vec c(n, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(c, Sense::kMaximize, p));
}
BENCHMARK(BM_SolveLp)->DenseRange(2, 6, 2);

void BM_ProjectOneCoordinate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const HPolyhedron p = sample_polytope(n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(project_prefix(p, n - 1));
}
BENCHMARK(BM_ProjectOneCoordinate)->DenseRange(2, 5);

void BM_VertexEnumeration(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const HPolyhedron p = sample_polytope(n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(h_to_v(p));
}
BENCHMARK(BM_VertexEnumeration)->DenseRange(2, 5);

// One full generated instance per iteration, including the oracle checks.
void BM_RunInstance(benchmark::State& state, Kind kind) {
  GeneratorOptions g;
  g.dim_lo = 2;
  g.dim_hi = 2;
  const auto inst = generate_instance(kind, 0, 0, g);
  if (!inst) {
    state.SkipWithError("generator produced no instance");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(run_instance(*inst));
}
BENCHMARK_CAPTURE(BM_RunInstance, conjugate_sum, Kind::kConjugateSum);
BENCHMARK_CAPTURE(BM_RunInstance, normal_intersection, Kind::kNormalIntersection);
BENCHMARK_CAPTURE(BM_RunInstance, cod_intersect, Kind::kCodIntersect);

}  // namespace
BENCHMARK_MAIN();
