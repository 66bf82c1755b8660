#pragma once

#include "longmem/series.hpp"

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <random>

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;

// i.i.d. N(0, 1) entries from a generator independent of the library's.
inline Eigen::MatrixXd white_noise(long n, long q, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, q);
  for (long t = 0; t < n; ++t)
    for (long i = 0; i < q; ++i) x(t, i) = z(gen);
  return x;
}

// AR(1) columns sharing one coefficient; gives a non-flat spectrum.
inline Eigen::MatrixXd ar1(long n, long q, double phi, unsigned seed) {
  Eigen::MatrixXd e = white_noise(n + 200, q, seed);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, q);
  Eigen::RowVectorXd prev = Eigen::RowVectorXd::Zero(q);
  for (long t = 0; t < n + 200; ++t) {
    prev = phi * prev + e.row(t);
    if (t >= 200) x.row(t - 200) = prev;
  }
  return x;
}

// Textbook DFT (2 pi n)^(-1/2) sum_t x_t exp(i lambda t) with t = 1..n.
inline Eigen::VectorXcd brute_dft(const Eigen::MatrixXd& x, double lambda) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(x.cols());
  for (long t = 1; t <= x.rows(); ++t)
    for (long i = 0; i < x.cols(); ++i)
      w[i] += x(t - 1, i) * std::complex<double>(std::cos(lambda * t), std::sin(lambda * t));
  return w / std::sqrt(2.0 * kPi * static_cast<double>(x.rows()));
}

inline Eigen::MatrixXd demeaned(const Eigen::MatrixXd& x) {
  return x.rowwise() - x.colwise().mean();
}

}  // namespace fixtures
