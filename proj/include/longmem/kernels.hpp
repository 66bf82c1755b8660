#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// variant; both evaluate every output element with the same arithmetic, so
// their results are bit-identical regardless of thread count.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace longmem::kernels {

enum class Exec { serial, parallel };

// Unnormalized transform at Fourier indices:
//   out(i, k) = sum_{t=1..n} y(t-1, i) * exp(+i * 2*pi * idx[k] * t / n)
// Indices may be any integers; they are reduced modulo n through a twiddle table.
Eigen::MatrixXcd fourier_sums_serial(const Eigen::MatrixXd& y, std::span<const long> idx);
Eigen::MatrixXcd fourier_sums_parallel(const Eigen::MatrixXd& y, std::span<const long> idx);
Eigen::MatrixXcd fourier_sums(const Eigen::MatrixXd& y, std::span<const long> idx, Exec exec);

// Weighted local average of outer products:
//   out[j] = sum_{|k|<=ell, k != skip(j)} W(k) (.) w[j+k] w[j+k]^*
// `table` is q x n and holds w at every residue 0..n-1 of one full period;
// positions j + k are reduced modulo n. `weights[k + ell]` is q x q or 1 x 1
// (broadcast). When skip_pole is set the term with k == -j is omitted.
struct SmoothingInput {
  const Eigen::MatrixXcd& table;
  std::span<const long> centers;
  std::span<const Eigen::MatrixXd> weights;
  long ell;
  bool skip_pole;
};
std::vector<Eigen::MatrixXcd> smooth_serial(const SmoothingInput& in);
std::vector<Eigen::MatrixXcd> smooth_parallel(const SmoothingInput& in);
std::vector<Eigen::MatrixXcd> smooth(const SmoothingInput& in, Exec exec);

// Truncated moving-average filter over a presampled innovation column:
//   out[t] = sum_{k=0..K} psi[k] * eps[t + K - k],  t = 0..n-1,
// with K = psi.size() - 1 and eps.size() == n + K.
std::vector<double> ma_filter_serial(std::span<const double> psi, std::span<const double> eps);
std::vector<double> ma_filter_parallel(std::span<const double> psi, std::span<const double> eps);
std::vector<double> ma_filter(std::span<const double> psi, std::span<const double> eps, Exec exec);

}  // namespace longmem::kernels
