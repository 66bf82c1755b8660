#include "longmem/kernels.hpp"

#include <cmath>
#include <numbers>

namespace longmem::kernels {
namespace {

struct Twiddles {
  std::vector<double> c;
  std::vector<double> s;
};

Twiddles twiddles(long n) {
  Twiddles tw{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (long k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw.c[static_cast<std::size_t>(k)] = std::cos(a);
    tw.s[static_cast<std::size_t>(k)] = std::sin(a);
  }
  return tw;
}

long residue(long j, long n) {
  const long r = j % n;
  return r < 0 ? r + n : r;
}

// One output column; t runs 1..n and the phase index is j*t mod n.
void fourier_column(const Eigen::MatrixXd& y, const Twiddles& tw, long j, Eigen::MatrixXcd& out, Eigen::Index col) {
  const long n = y.rows();
  const long r = residue(j, n);
  for (Eigen::Index i = 0; i < y.cols(); ++i) {
    double re = 0.0;
    double im = 0.0;
    long phase = r;  // (r * t) mod n at t = 1
    for (long t = 0; t < n; ++t) {
      const double v = y(t, i);
      re += v * tw.c[static_cast<std::size_t>(phase)];
      im += v * tw.s[static_cast<std::size_t>(phase)];
      phase += r;
      if (phase >= n) phase -= n;
    }
    out(i, col) = {re, im};
  }
}

Eigen::MatrixXcd smoothed_point(const SmoothingInput& in, long j) {
  const long n = in.table.cols();
  const Eigen::Index q = in.table.rows();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(q, q);
  for (long k = -in.ell; k <= in.ell; ++k) {
    if (in.skip_pole && k == -j) continue;
    const auto w = in.table.col(residue(j + k, n));
    const Eigen::MatrixXd& wk = in.weights[static_cast<std::size_t>(k + in.ell)];
    const bool shared = wk.size() == 1;
    for (Eigen::Index s = 0; s < q; ++s)
      for (Eigen::Index r = 0; r < q; ++r)
        acc(r, s) += (shared ? wk(0, 0) : wk(r, s)) * (w[r] * std::conj(w[s]));
  }
  return acc;
}

double dot_window(std::span<const double> rpsi, const double* eps) {
  double acc = 0.0;
  const std::size_t len = rpsi.size();
  const double* p = rpsi.data();
#pragma omp simd reduction(+ : acc)
  for (std::size_t u = 0; u < len; ++u) acc += p[u] * eps[u];
  return acc;
}

std::vector<double> reversed(std::span<const double> psi) { return {psi.rbegin(), psi.rend()}; }

}  // namespace

Eigen::MatrixXcd fourier_sums_serial(const Eigen::MatrixXd& y, std::span<const long> idx) {
  const Twiddles tw = twiddles(y.rows());
  Eigen::MatrixXcd out(y.cols(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) fourier_column(y, tw, idx[k], out, static_cast<Eigen::Index>(k));
  return out;
}

Eigen::MatrixXcd fourier_sums_parallel(const Eigen::MatrixXd& y, std::span<const long> idx) {
  const Twiddles tw = twiddles(y.rows());
  Eigen::MatrixXcd out(y.cols(), static_cast<Eigen::Index>(idx.size()));
  const long count = static_cast<long>(idx.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) fourier_column(y, tw, idx[static_cast<std::size_t>(k)], out, k);
  return out;
}

Eigen::MatrixXcd fourier_sums(const Eigen::MatrixXd& y, std::span<const long> idx, Exec exec) {
  return exec == Exec::serial ? fourier_sums_serial(y, idx) : fourier_sums_parallel(y, idx);
}

std::vector<Eigen::MatrixXcd> smooth_serial(const SmoothingInput& in) {
  std::vector<Eigen::MatrixXcd> out(in.centers.size());
  for (std::size_t k = 0; k < in.centers.size(); ++k) out[k] = smoothed_point(in, in.centers[k]);
  return out;
}

std::vector<Eigen::MatrixXcd> smooth_parallel(const SmoothingInput& in) {
  std::vector<Eigen::MatrixXcd> out(in.centers.size());
  const long count = static_cast<long>(in.centers.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = smoothed_point(in, in.centers[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<Eigen::MatrixXcd> smooth(const SmoothingInput& in, Exec exec) {
  return exec == Exec::serial ? smooth_serial(in) : smooth_parallel(in);
}

std::vector<double> ma_filter_serial(std::span<const double> psi, std::span<const double> eps) {
  const std::vector<double> rpsi = reversed(psi);
  const std::size_t n = eps.size() + 1 - psi.size();
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = dot_window(rpsi, eps.data() + t);
  return out;
}

std::vector<double> ma_filter_parallel(std::span<const double> psi, std::span<const double> eps) {
  const std::vector<double> rpsi = reversed(psi);
  const long n = static_cast<long>(eps.size() + 1 - psi.size());
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = dot_window(rpsi, eps.data() + t);
  return out;
}

std::vector<double> ma_filter(std::span<const double> psi, std::span<const double> eps, Exec exec) {
  return exec == Exec::serial ? ma_filter_serial(psi, eps) : ma_filter_parallel(psi, eps);
}

}  // namespace longmem::kernels
