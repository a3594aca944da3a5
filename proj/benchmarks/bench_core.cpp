// Microbenchmarks on MNIST-sized (10 x 196) synthetic designs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ddbin/ann.hpp"
#include "ddbin/dataset.hpp"
#include "ddbin/fill_factor.hpp"
#include "ddbin/naive_bayes.hpp"
#include "ddbin/rng.hpp"
#include "ddbin/sensor.hpp"

namespace {

using namespace ddbin;

constexpr std::size_t kClasses = 10;
constexpr std::size_t kPixels = 196;

Matrix random_matrix(std::size_t rows, std::size_t cols, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = u(eng);
  return m;
}

std::vector<double> random_image(std::uint64_t seed) {
  const Matrix m = random_matrix(1, kPixels, 0.0, 1.0, seed);
  return {m.values().begin(), m.values().end()};
}

Dataset random_dataset(std::size_t count) {
  Dataset d;
  d.rows = 14;
  d.cols = 14;
  d.class_count = kClasses;
  for (std::size_t m = 0; m < kClasses; ++m) d.class_labels.push_back(static_cast<int>(m));
  d.pixels = random_matrix(count, kPixels, 0.0, 1.0, 3);
  for (std::size_t i = 0; i < count; ++i) d.labels.push_back(static_cast<std::uint32_t>(i % kClasses));
  return d;
}

void BM_PredictLinear(benchmark::State& state) {
  const WeightMatrix w(random_matrix(kClasses, kPixels, -5.0, 0.0, 1));
  const auto p = random_image(2);
  for (auto _ : state) benchmark::DoNotOptimize(predict_linear(w, p));
}
BENCHMARK(BM_PredictLinear);

void BM_SensorReadNoiseless(benchmark::State& state) {
  const SensorModel s{normalize_nb(WeightMatrix(random_matrix(kClasses, kPixels, -5.0, 0.0, 1))),
                      kDefaultResponsivity, 0.0, 0};
  const auto p = random_image(2);
  for (auto _ : state) benchmark::DoNotOptimize(read(s, p, 1e-9));
}
BENCHMARK(BM_SensorReadNoiseless);

void BM_SensorReadNoisy(benchmark::State& state) {
  const SensorModel s{normalize_nb(WeightMatrix(random_matrix(kClasses, kPixels, -5.0, 0.0, 1))),
                      kDefaultResponsivity, 1e-9, 7};
  const auto p = random_image(2);
  NormalStream noise(7);
  for (auto _ : state) benchmark::DoNotOptimize(read(s, p, 1e-9, noise));
}
BENCHMARK(BM_SensorReadNoisy);

void BM_ReferenceReadNoisy(benchmark::State& state) {
  const WeightMatrix w(random_matrix(kClasses, kPixels, -5.0, 0.0, 1));
  const auto p = random_image(2);
  NormalStream noise(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(read_reference(w, p, 1e-9, 1e-9, kDefaultResponsivity, &noise));
  }
}
BENCHMARK(BM_ReferenceReadNoisy);

void BM_NormalizeNb(benchmark::State& state) {
  const WeightMatrix w(random_matrix(kClasses, kPixels, -5.0, 0.0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(normalize_nb(w));
}
BENCHMARK(BM_NormalizeNb);

void BM_FitNb(benchmark::State& state) {
  const Dataset d = random_dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_nb(d, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitNb)->Arg(1000)->Arg(10000);

void BM_Softmax(benchmark::State& state) {
  const auto z = random_image(4);
  std::vector<double> out(kClasses);
  const std::span<const double> logits(z.data(), kClasses);
  for (auto _ : state) {
    softmax(logits, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Softmax);

}  // namespace

BENCHMARK_MAIN();
