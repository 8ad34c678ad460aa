#include <benchmark/benchmark.h>

#include <random>

#include "rht/hochschild.hpp"
#include "rht/hodge.hpp"
#include "rht/linalg.hpp"
#include "rht/mapping_space.hpp"
#include "rht/sullivan.hpp"

using namespace rht;

namespace {

// Sparse matrix with small integer entries, about `per_col` nonzeros per column.
// Random entries make the fractions grow fast, so sizes stay small.
SparseMatrix random_matrix(std::size_t n, int per_col, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<SparseVector> cols(n);
  for (auto& c : cols) {
    for (int k = 0; k < per_col; ++k) axpy(c, Rational(int(rng() % 7) - 3), unit_vector(int32_t(rng() % n)));
  }
  return SparseMatrix::from_columns(n, std::move(cols));
}

FreeCDGA model(const char* name) { return standard_model(SpaceDescriptor::parse(name)); }

void BM_Rank(benchmark::State& state) {
  const SparseMatrix m = random_matrix(std::size_t(state.range(0)), 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BuildBarComplex(benchmark::State& state) {
  const int D = int(state.range(0));
  const FreeCDGA s2 = model("S2");
  for (auto _ : state) benchmark::DoNotOptimize(BarCochainComplex::build(self_bimodule(s2, D, 3), 3, D).dim(-3));
}
BENCHMARK(BM_BuildBarComplex)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HochschildCohomology(benchmark::State& state) {
  const int D = int(state.range(0));
  const FreeCDGA cp2 = model("CP2");
  for (auto _ : state) {
    HochschildCohomology h(self_bimodule(cp2, D, 4), 4, D);
    benchmark::DoNotOptimize(h.dim(-4));
  }
}
BENCHMARK(BM_HochschildCohomology)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AdamsOperation(benchmark::State& state) {
  const std::size_t p = std::size_t(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(adams_operation(p, 2));
  }
}
BENCHMARK(BM_AdamsOperation)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_DerivationComplex(benchmark::State& state) {
  const TruncatedDGA x(model("CP2"), 12);
  for (auto _ : state) benchmark::DoNotOptimize(aq(DGAMorphism::identity(x), 4).dim(-3));
}
BENCHMARK(BM_DerivationComplex)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
