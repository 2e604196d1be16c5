#include <benchmark/benchmark.h>

#include "isodescent/descent.hpp"
#include "isodescent/forge.hpp"

namespace {

using namespace isodescent;

Matrix random_square(const FieldDescriptor& fd, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(fd, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_integral(fd, rng) * uniformizer_power(fd, rng.uniform(-2, 2));
  return m;
}

void BM_DescendQ5(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::rational_padic(5);
  const DescentProblem p = generate_instance(fd, {n, staircase_levels(n), 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(descend(p));
}
BENCHMARK(BM_DescendQ5)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_DescendGaussian7(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::gaussian_inert(7);
  const DescentProblem p = generate_instance(fd, {n, staircase_levels(n), 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(descend(p));
}
BENCHMARK(BM_DescendGaussian7)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_DescendRatfuncF7(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::ratfunc_tadic(7);
  const DescentProblem p = generate_instance(fd, {n, staircase_levels(n), 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(descend(p));
}
BENCHMARK(BM_DescendRatfuncF7)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_MatrixMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::rational_padic(5);
  const Matrix a = random_square(fd, n, 1), b = random_square(fd, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_MatrixMul)->RangeMultiplier(2)->Range(2, 32);

void BM_MatrixInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::rational_padic(5);
  Matrix a = random_square(fd, n, 3);
  for (std::size_t i = 0; i < n; ++i) a.at(i, i) = a(i, i) + FieldElement::from_integer(fd, 1);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(a));
}
BENCHMARK(BM_MatrixInverse)->RangeMultiplier(2)->Range(2, 16);

void BM_CoreIsometry(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const FieldDescriptor fd = FieldDescriptor::rational_padic(5);
  Rng rng(9);
  Matrix x(fd, r, r), z(fd, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      x.at(i, j) = x.at(j, i) = random_integral(fd, rng);
      z.at(i, j) = z.at(j, i) = random_integral(fd, rng);
    }
  }
  const FieldElement pi = FieldElement::from_integer(fd, 5);
  for (auto _ : state) benchmark::DoNotOptimize(core_isometry(x, z, pi));
}
BENCHMARK(BM_CoreIsometry)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
