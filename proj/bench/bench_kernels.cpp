// Serial reference vs OpenMP kernels.

#include "longmem/gse.hpp"
#include "longmem/kernels.hpp"
#include "longmem/varfima.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace longmem;

namespace {

Eigen::MatrixXd noise(long n, long q) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, q);
  for (long i = 0; i < x.size(); ++i) x.data()[i] = z(gen);
  return x;
}

kernels::Exec mode(const benchmark::State& state) {
  return state.range(0) == 0 ? kernels::Exec::serial : kernels::Exec::parallel;
}

void BM_FourierSums(benchmark::State& state) {
  const Eigen::MatrixXd y = noise(state.range(1), 2);
  std::vector<long> idx;
  for (long j = 1; j <= state.range(1) / 2; ++j) idx.push_back(j);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::fourier_sums(y, idx, mode(state)));
}
BENCHMARK(BM_FourierSums)->ArgsProduct({{0, 1}, {1000, 8192}});

void BM_Smooth(benchmark::State& state) {
  const long n = state.range(1);
  const long ell = long(std::pow(double(n), 0.9));
  std::vector<long> all(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) all[std::size_t(j)] = j;
  const Eigen::MatrixXcd table = kernels::fourier_sums_serial(noise(n, 2), all);
  const WeightScheme w = bartlett_weights(n, ell);
  std::vector<long> centers;
  for (long j = 1; j <= long(std::pow(double(n), 0.85)); ++j) centers.push_back(j);
  const kernels::SmoothingInput in{table, centers, w.weights(), ell, false};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::smooth(in, mode(state)));
}
BENCHMARK(BM_Smooth)->ArgsProduct({{0, 1}, {1000, 4000}});

void BM_MaFilter(benchmark::State& state) {
  const long n = 1000, K = state.range(1);
  const std::vector<double> psi = frac_ma_coeffs(0.3, K);
  const Eigen::MatrixXd e = noise(n + K, 1);
  const std::vector<double> eps(e.data(), e.data() + e.size());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ma_filter(psi, eps, mode(state)));
}
BENCHMARK(BM_MaFilter)->ArgsProduct({{0, 1}, {10000, 50000}});

void BM_MultiStart(benchmark::State& state) {
  const MultiSeries x = simulate(VarfimaSpec::bivariate(0.2, 0.3, 0.0, state.range(1), 10000, 3));
  EstimateConfig cfg;
  cfg.optimizer.exec = mode(state);
  const GseObjective obj(spectral_estimate(x, cfg), resolve_m(cfg, x.n()));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(obj, ParamSpace::standard(2), cfg.optimizer));
}
BENCHMARK(BM_MultiStart)->ArgsProduct({{0, 1}, {1000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
