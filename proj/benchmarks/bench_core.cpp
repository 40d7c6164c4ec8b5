#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kothe/criteria.hpp"

using namespace kothe;

namespace {

KotheMatrix infinite_type(int n, int k) {
  PowerSeriesGenerator gen{PowerSeriesGenerator::Type::Infinite,
                           {PowerSeriesGenerator::AlphaRule::Kind::Linear, 1.0, {}}};
  return KotheMatrix::from_generator(gen, n, k);
}

CoordVector random_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = unif(rng);
  return CoordVector::dense(v);
}

MatrixOperator random_operator(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> coef(n, std::vector<double>(n));
  for (auto& row : coef)
    for (auto& c : row) c = unif(rng);
  return MatrixOperator(std::move(coef));
}

void BM_Seminorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 4);
  auto x = random_vector(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(seminorm(a, EllNorm::l2(), x, 3));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Seminorm)->Range(16, 1024)->Complexity();

void BM_DualSeminorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 4);
  auto u = random_vector(n, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(dual_seminorm(a, EllNorm::l2(), u, 3));
  state.SetComplexityN(n);
}
BENCHMARK(BM_DualSeminorm)->Range(16, 1024)->Complexity();

void BM_OpnormL1Domain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 3);
  Space dom{a, EllNorm::l1()}, cod{a, EllNorm::l1()};
  auto t = random_operator(n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(opnorm_l1_domain(t, dom, cod, 1, 2));
  state.SetComplexityN(n);
}
BENCHMARK(BM_OpnormL1Domain)->Range(8, 256)->Complexity();

void BM_OpnormBoundsL2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 3);
  Space dom{a, EllNorm::l2()}, cod{a, EllNorm::l2()};
  auto t = random_operator(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(opnorm_bounds(t, dom, cod, 1, 2));
}
BENCHMARK(BM_OpnormBoundsL2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_CheckBMatrixPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 4);
  SearchBudget budget;
  budget.n_range = n;
  for (auto _ : state) benchmark::DoNotOptimize(check_b_matrix_pair(a, a, budget));
  state.SetComplexityN(n);
}
BENCHMARK(BM_CheckBMatrixPair)->Range(8, 128)->Complexity();

void BM_CheckNuclear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 4);
  SearchBudget budget;
  budget.n_range = n;
  for (auto _ : state)
    benchmark::DoNotOptimize(check_nuclear(a, {1, 2, 3, 4}, budget));
}
BENCHMARK(BM_CheckNuclear)->Range(16, 256);

void BM_TensorProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = infinite_type(n, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(tensor_product(a, a, Pairing::Diagonal));
  state.SetComplexityN(n);
}
BENCHMARK(BM_TensorProduct)->Range(8, 128)->Complexity();

}  // namespace

BENCHMARK_MAIN();
