#pragma once

#include "longmem/kernels.hpp"
#include "longmem/series.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace longmem {

// Fourier frequencies lambda_j = 2*pi*j/n for a strictly increasing index list.
class FrequencyGrid {
 public:
  // Indices 1..m. Requires 1 <= m <= n/2.
  static FrequencyGrid fourier(long n, long m);
  // Arbitrary strictly increasing integer indices (0 and j > n/2 allowed).
  static FrequencyGrid from_indices(long n, std::vector<long> indices);

  long n() const noexcept { return n_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<long>& indices() const noexcept { return indices_; }
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  long index(std::size_t k) const { return indices_[k]; }
  double lambda(std::size_t k) const { return lambdas_[k]; }

  static double frequency(long n, long j);

 private:
  FrequencyGrid(long n, std::vector<long> indices);
  long n_;
  std::vector<long> indices_;
  std::vector<double> lambdas_;
};

enum class SpectralKind { raw, smoothed, tapered };

std::string to_string(SpectralKind kind);
SpectralKind parse_spectral_kind(const std::string& s);

// Complex Hermitian q x q matrix per grid point.
class SpectralEstimate {
 public:
  SpectralEstimate(FrequencyGrid grid, std::vector<Eigen::MatrixXcd> matrices, SpectralKind kind);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const std::vector<Eigen::MatrixXcd>& matrices() const noexcept { return matrices_; }
  const Eigen::MatrixXcd& at(std::size_t k) const { return matrices_[k]; }
  SpectralKind kind() const noexcept { return kind_; }
  Eigen::Index q() const { return matrices_.front().rows(); }
  std::size_t size() const noexcept { return matrices_.size(); }

  // Same estimate with every matrix multiplied by c.
  SpectralEstimate scaled(double c) const;

 private:
  FrequencyGrid grid_;
  std::vector<Eigen::MatrixXcd> matrices_;
  SpectralKind kind_;
};

struct SpectralOptions {
  // Subtract the per-component sample mean before transforming.
  bool demean = true;
  kernels::Exec exec = kernels::Exec::parallel;
};

// w_n(lambda) = (2*pi*n)^(-1/2) sum_t X_t exp(i*lambda*t), on the series as given.
Eigen::VectorXcd dft(const MultiSeries& series, double lambda);

// Columns are w_n(lambda_j) for the grid points (q x grid.size()).
Eigen::MatrixXcd dft(const MultiSeries& series, const FrequencyGrid& grid,
                     kernels::Exec exec = kernels::Exec::parallel);

SpectralEstimate periodogram(const MultiSeries& series, const FrequencyGrid& grid,
                             const SpectralOptions& options = {});

// Symmetric nonnegative weights W(k), |k| <= ell, each q x q or 1 x 1 (shared
// by every entry).
class WeightScheme {
 public:
  // Throws ArgumentError on asymmetric or negative weights, or size mismatch.
  WeightScheme(long n, long ell, std::vector<Eigen::MatrixXd> weights, bool skip_pole = false);

  long n() const noexcept { return n_; }
  long ell() const noexcept { return ell_; }
  bool skip_pole() const noexcept { return skip_pole_; }
  const Eigen::MatrixXd& weight(long k) const { return weights_[static_cast<std::size_t>(k + ell_)]; }
  const std::vector<Eigen::MatrixXd>& weights() const noexcept { return weights_; }

  // max over entries of |sum_k W(k) - 1|.
  double sum_deviation() const;
  // Every entry rescaled so that it sums to one over k.
  WeightScheme normalized() const;
  WeightScheme with_skip_pole(bool skip) const;

 private:
  long n_;
  long ell_;
  std::vector<Eigen::MatrixXd> weights_;
  bool skip_pole_;
};

// W(k) = sin^2(ell*lambda_k/2) / (n*ell*sin^2(lambda_k/2)), W = ell/n where
// lambda_k is a multiple of 2*pi. Requires 1 <= ell < n.
WeightScheme bartlett_weights(long n, long ell, bool normalize = true);

// Local weighted average of periodogram ordinates. A grid index of 0 selects the one-sided zero-frequency
// form Re[W(0) I(lambda_1) + 2 sum_{k=1..ell} W(k) I(lambda_{k+1})].
SpectralEstimate smoothed_periodogram(const MultiSeries& series, const FrequencyGrid& grid,
                                      const WeightScheme& scheme,
                                      const SpectralOptions& options = {});

// 0.5*(1 - cos(2*pi*u)) on [0, 1/2], mirrored on (1/2, 1].
double cosine_bell(double u);

// Data taper h_i : [0,1] -> R, one shared function or one per component.
class Taper {
 public:
  using Function = std::function<double(double)>;

  // Throws ArgumentError if some H_i = int_0^1 h_i^2 is not positive.
  explicit Taper(std::vector<Function> h, std::string name = "custom");

  static Taper cosine_bell();
  static Taper constant();

  const std::string& name() const noexcept { return name_; }
  // h for component i (the shared function when only one was given).
  const Function& h(Eigen::Index i) const;
  double H(Eigen::Index i) const;
  std::size_t count() const noexcept { return h_.size(); }

 private:
  std::vector<Function> h_;
  std::vector<double> H_;
  std::string name_;
};

// Tapered periodogram with S_n(t) = h(t/n) / sqrt(sum_s h(s/n)^2) and the
// exp(+i*t*lambda) convention of dft(). Throws NumericalError when a taper
// vanishes on every sample point.
SpectralEstimate tapered_periodogram(const MultiSeries& series, const FrequencyGrid& grid,
                                     const Taper& taper, const SpectralOptions& options = {});

}  // namespace longmem
