#pragma once

#include "longmem/kernels.hpp"
#include "longmem/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace longmem {

// Coefficients psi_0..psi_K of (1 - B)^(-d).
std::vector<double> frac_ma_coeffs(double d, long K);

// splitmix64 finalizer; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);
// Seed for replication r of a run with base seed `base`:
// splitmix64(splitmix64(base) + r).
std::uint64_t replication_seed(std::uint64_t base, std::uint64_t r);

// Correlated standard normal q-vectors: z ~ N(0, I) from a mt19937_64 seeded
// with splitmix64(seed), eps = L z with L lower triangular.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, Eigen::MatrixXd corr_factor);
  Eigen::VectorXd next();
  // count x q block, row t is the t-th vector.
  Eigen::MatrixXd take(long count);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  Eigen::MatrixXd factor_;
};

Eigen::MatrixXd gaussian_stream(std::uint64_t seed, long count, const Eigen::MatrixXd& corr_factor);

// Lower Cholesky factor of a correlation matrix; ArgumentError if not PD.
Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& corr);

struct VarfimaSpec {
  Eigen::VectorXd d;
  Eigen::MatrixXd innovation_corr;
  long truncation = 50000;
  std::uint64_t seed = 0;
  long n = 1000;

  // Two components with innovation correlation rho.
  static VarfimaSpec bivariate(double d1, double d2, double rho, long n, long truncation,
                               std::uint64_t seed);
  static VarfimaSpec univariate(double d, long n, long truncation, std::uint64_t seed);

  // Throws ArgumentError on |d_k| >= 0.5, a non-correlation matrix, n < 2 or K < 0.
  void validate() const;
};

// Gaussian VARFIMA(0,d,0) by the truncated MA(inf) representation with K
// presampled innovations of burn-in:
//   X_{t,i} = sum_{k=0..K} psi_k(d_i) eps_{t-k,i}.
MultiSeries simulate(const VarfimaSpec& spec, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace longmem
