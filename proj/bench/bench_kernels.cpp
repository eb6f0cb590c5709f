// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "pcalda/kernels.hpp"
#include "pcalda/recognizer.hpp"
#include "pcalda/synthetic.hpp"

using namespace pcalda;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

// Image-shaped operands: N pixels by p images.
void image_args(benchmark::internal::Benchmark* b) {
  for (int n : {1024, 4096, 16384}) b->Args({n, 64});
}

template <Matrix (*Fn)(const Matrix&, const Matrix&)>
void BM_gram(benchmark::State& state) {
  const Matrix x = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, x));
  state.counters["threads"] = kernels::max_threads();
}

template <Matrix (*Fn)(const Matrix&, const Matrix&)>
void BM_matmul(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 2);
  const Matrix b = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b));
}

template <Matrix (*Fn)(const Matrix&, std::span<const double>)>
void BM_center(benchmark::State& state) {
  const Matrix x = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 4);
  const std::vector<double> mean = kernels::serial::column_mean(x);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, mean));
}

template <std::vector<double> (*Fn)(std::span<const double>, const Matrix&)>
void BM_distances(benchmark::State& state) {
  const Matrix exemplars = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 5);
  const Matrix probe = random_matrix(exemplars.rows(), 1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(probe.col(0), exemplars));
}

void BM_train_synthetic(benchmark::State& state) {
  const LabeledGallery g = synthesize_gallery({10, 6, 64, 64, 42});
  for (auto _ : state) benchmark::DoNotOptimize(train(g, {}));
}

}  // namespace

BENCHMARK(BM_gram<kernels::serial::transpose_matmul>)->Apply(image_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_gram<kernels::transpose_matmul>)->Apply(image_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_matmul<kernels::serial::matmul>)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_matmul<kernels::matmul>)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_center<kernels::serial::center_columns>)->Apply(image_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_center<kernels::center_columns>)->Apply(image_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_distances<kernels::serial::column_distances>)->Args({16, 4096})->Args({64, 65536})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_distances<kernels::column_distances>)->Args({16, 4096})->Args({64, 65536})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_train_synthetic)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
