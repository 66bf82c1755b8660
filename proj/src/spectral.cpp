#include "longmem/spectral.hpp"

#include "longmem/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace longmem {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long residue(long j, long n) {
  const long r = j % n;
  return r < 0 ? r + n : r;
}

// I(r, s) = w[r] conj(w[s]); the smoother forms its terms the same way.
Eigen::MatrixXcd outer(const Eigen::Ref<const Eigen::VectorXcd>& w) {
  const Eigen::Index q = w.size();
  Eigen::MatrixXcd out(q, q);
  for (Eigen::Index s = 0; s < q; ++s)
    for (Eigen::Index r = 0; r < q; ++r) out(r, s) = w[r] * std::conj(w[s]);
  return out;
}

MultiSeries prepared(const MultiSeries& series, const SpectralOptions& options) {
  return options.demean ? series.centered() : series;
}

}  // namespace

double FrequencyGrid::frequency(long n, long j) { return kTwoPi * static_cast<double>(j) / static_cast<double>(n); }

FrequencyGrid::FrequencyGrid(long n, std::vector<long> indices) : n_(n), indices_(std::move(indices)) {
  if (n_ < 2) throw ArgumentError("frequency grid needs n >= 2");
  if (indices_.empty()) throw ArgumentError("frequency grid is empty");
  lambdas_.reserve(indices_.size());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k > 0 && indices_[k] <= indices_[k - 1]) throw ArgumentError("grid indices must be strictly increasing");
    lambdas_.push_back(frequency(n_, indices_[k]));
  }
}

FrequencyGrid FrequencyGrid::fourier(long n, long m) {
  if (n < 2 || m < 1 || m > n / 2)
    throw ArgumentError("need 1 <= m <= n/2, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  std::vector<long> idx(static_cast<std::size_t>(m));
  for (long j = 1; j <= m; ++j) idx[static_cast<std::size_t>(j - 1)] = j;
  return FrequencyGrid(n, std::move(idx));
}

FrequencyGrid FrequencyGrid::from_indices(long n, std::vector<long> indices) {
  return FrequencyGrid(n, std::move(indices));
}

std::string to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::raw: return "raw";
    case SpectralKind::smoothed: return "smoothed";
    case SpectralKind::tapered: return "tapered";
  }
  return "raw";
}

SpectralKind parse_spectral_kind(const std::string& s) {
  if (s == "raw") return SpectralKind::raw;
  if (s == "smoothed") return SpectralKind::smoothed;
  if (s == "tapered") return SpectralKind::tapered;
  throw ArgumentError("unknown estimator '" + s + "' (expected raw, smoothed or tapered)");
}

SpectralEstimate::SpectralEstimate(FrequencyGrid grid, std::vector<Eigen::MatrixXcd> matrices, SpectralKind kind)
    : grid_(std::move(grid)), matrices_(std::move(matrices)), kind_(kind) {
  if (matrices_.size() != grid_.size()) throw ArgumentError("one matrix per grid point required");
  for (const auto& m : matrices_)
    if (m.rows() != m.cols() || m.rows() != matrices_.front().rows())
      throw ArgumentError("spectral matrices must be square and of equal size");
}

SpectralEstimate SpectralEstimate::scaled(double c) const {
  std::vector<Eigen::MatrixXcd> m = matrices_;
  for (auto& x : m) x *= c;
  return SpectralEstimate(grid_, std::move(m), kind_);
}

Eigen::VectorXcd dft(const MultiSeries& series, double lambda) {
  const Eigen::MatrixXd& x = series.values();
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(series.q());
  for (Eigen::Index t = 0; t < series.n(); ++t) {
    const std::complex<double> e = std::polar(1.0, lambda * static_cast<double>(t + 1));
    for (Eigen::Index i = 0; i < series.q(); ++i) w[i] += x(t, i) * e;
  }
  return w / std::sqrt(kTwoPi * static_cast<double>(series.n()));
}

Eigen::MatrixXcd dft(const MultiSeries& series, const FrequencyGrid& grid, kernels::Exec exec) {
  if (grid.n() != series.n()) throw ArgumentError("grid and series disagree on n");
  Eigen::MatrixXcd w = kernels::fourier_sums(series.values(), grid.indices(), exec);
  return w / std::sqrt(kTwoPi * static_cast<double>(series.n()));
}

SpectralEstimate periodogram(const MultiSeries& series, const FrequencyGrid& grid, const SpectralOptions& options) {
  const Eigen::MatrixXcd w = dft(prepared(series, options), grid, options.exec);
  std::vector<Eigen::MatrixXcd> mats(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) mats[k] = outer(w.col(static_cast<Eigen::Index>(k)));
  return SpectralEstimate(grid, std::move(mats), SpectralKind::raw);
}

// ---------------------------------------------------------------------------
// Weight schemes

WeightScheme::WeightScheme(long n, long ell, std::vector<Eigen::MatrixXd> weights, bool skip_pole)
    : n_(n), ell_(ell), weights_(std::move(weights)), skip_pole_(skip_pole) {
  if (ell_ < 0) throw ArgumentError("bandwidth ell must be nonnegative");
  if (weights_.size() != static_cast<std::size_t>(2 * ell_ + 1))
    throw ArgumentError("expected 2*ell+1 weight matrices, got " + std::to_string(weights_.size()));
  const Eigen::Index rows = weights_.front().rows();
  const Eigen::Index cols = weights_.front().cols();
  if (rows != cols) throw ArgumentError("weights must be square");
  for (long k = -ell_; k <= ell_; ++k) {
    const Eigen::MatrixXd& w = weight(k);
    if (w.rows() != rows || w.cols() != cols) throw ArgumentError("weights must share one shape");
    if (!w.allFinite() || (w.array() < 0.0).any())
      throw ArgumentError("weight W(" + std::to_string(k) + ") has a negative or non-finite entry");
    if (w != weight(-k)) throw ArgumentError("weights must satisfy W(k) == W(-k), violated at k=" + std::to_string(k));
  }
}

double WeightScheme::sum_deviation() const {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(weights_.front().rows(), weights_.front().cols());
  for (const auto& w : weights_) sum += w;
  return (sum.array() - 1.0).abs().maxCoeff();
}

WeightScheme WeightScheme::normalized() const {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(weights_.front().rows(), weights_.front().cols());
  for (const auto& w : weights_) sum += w;
  if ((sum.array() <= 0.0).any()) throw ArgumentError("cannot normalize weights with a zero sum");
  std::vector<Eigen::MatrixXd> scaled = weights_;
  for (auto& w : scaled) w = w.cwiseQuotient(sum);
  return WeightScheme(n_, ell_, std::move(scaled), skip_pole_);
}

WeightScheme WeightScheme::with_skip_pole(bool skip) const {
  WeightScheme copy = *this;
  copy.skip_pole_ = skip;
  return copy;
}

WeightScheme bartlett_weights(long n, long ell, bool normalize) {
  if (n < 2 || ell < 1 || ell >= n)
    throw ArgumentError("Bartlett weights need 1 <= ell < n, got ell=" + std::to_string(ell) +
                        ", n=" + std::to_string(n));
  const double nd = static_cast<double>(n);
  const double ld = static_cast<double>(ell);
  std::vector<Eigen::MatrixXd> w(static_cast<std::size_t>(2 * ell + 1), Eigen::MatrixXd(1, 1));
  for (long k = 0; k <= ell; ++k) {
    double v;
    if (k % n == 0) {
      v = ld / nd;
    } else {
      const double half = 0.5 * FrequencyGrid::frequency(n, k);
      const double num = std::sin(ld * half);
      const double den = std::sin(half);
      v = num * num / (nd * ld * den * den);
    }
    w[static_cast<std::size_t>(ell + k)](0, 0) = v;
    w[static_cast<std::size_t>(ell - k)](0, 0) = v;
  }
  WeightScheme scheme(n, ell, std::move(w));
  return normalize ? scheme.normalized() : scheme;
}

SpectralEstimate smoothed_periodogram(const MultiSeries& series, const FrequencyGrid& grid,
                                      const WeightScheme& scheme, const SpectralOptions& options) {
  const long n = series.n();
  const Eigen::Index q = series.q();
  if (grid.n() != n) throw ArgumentError("grid and series disagree on n");
  if (scheme.n() != n) throw ArgumentError("weight scheme built for n=" + std::to_string(scheme.n()) +
                                           " applied to a series with n=" + std::to_string(n));
  const Eigen::Index wdim = scheme.weights().front().rows();
  if (wdim != 1 && wdim != q) throw ArgumentError("weight matrices must be 1x1 or qxq");
  const long ell = scheme.ell();

  // Residues r <= n/2 actually touched; the rest follow from w(-lambda) = conj(w(lambda)).
  std::vector<char> needed(static_cast<std::size_t>(n / 2 + 1), 0);
  auto mark = [&](long pos) {
    const long r = residue(pos, n);
    needed[static_cast<std::size_t>(std::min(r, n - r))] = 1;
  };
  for (long j : grid.indices()) {
    if (j == 0) {
      for (long k = 1; k <= ell + 1; ++k) mark(k);
    } else {
      for (long k = -ell; k <= ell; ++k) mark(j + k);
    }
  }
  std::vector<long> canon;
  for (long r = 0; r <= n / 2; ++r)
    if (needed[static_cast<std::size_t>(r)]) canon.push_back(r);

  const MultiSeries x = prepared(series, options);
  const Eigen::MatrixXcd w = kernels::fourier_sums(x.values(), canon, options.exec) /
                             std::sqrt(kTwoPi * static_cast<double>(n));
  Eigen::MatrixXcd table = Eigen::MatrixXcd::Zero(q, n);
  for (std::size_t c = 0; c < canon.size(); ++c) {
    const long r = canon[c];
    table.col(r) = w.col(static_cast<Eigen::Index>(c));
    if (r != 0 && n - r != r) table.col(n - r) = w.col(static_cast<Eigen::Index>(c)).conjugate();
  }

  std::vector<long> centers;
  for (long j : grid.indices())
    if (j != 0) centers.push_back(j);
  const kernels::SmoothingInput in{table, centers, scheme.weights(), ell, scheme.skip_pole()};
  std::vector<Eigen::MatrixXcd> smoothed = kernels::smooth(in, options.exec);

  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(grid.size());
  std::size_t next = 0;
  for (long j : grid.indices()) {
    if (j != 0) {
      mats.push_back(std::move(smoothed[next++]));
      continue;
    }
    Eigen::MatrixXd f0 = Eigen::MatrixXd::Zero(q, q);
    for (long k = 0; k <= ell; ++k) {
      const Eigen::MatrixXd per = outer(table.col(residue(k + 1, n))).real();
      const Eigen::MatrixXd& wk = scheme.weight(k);
      const double factor = k == 0 ? 1.0 : 2.0;
      f0 += factor * (wdim == 1 ? Eigen::MatrixXd(wk(0, 0) * per) : Eigen::MatrixXd(wk.cwiseProduct(per)));
    }
    mats.push_back(f0.cast<std::complex<double>>());
  }
  return SpectralEstimate(grid, std::move(mats), SpectralKind::smoothed);
}

// ---------------------------------------------------------------------------
// Tapers

double cosine_bell(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("cosine bell is defined on [0, 1]");
  if (u > 0.5) u = 1.0 - u;
  return 0.5 * (1.0 - std::cos(kTwoPi * u));
}

namespace {

// Composite Simpson rule for int_0^1 h^2.
double squared_integral(const Taper::Function& h) {
  constexpr int intervals = 2000;
  const double step = 1.0 / intervals;
  double s = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double v = h(i * step);
    const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s += c * v * v;
  }
  return s * step / 3.0;
}

}  // namespace

Taper::Taper(std::vector<Function> h, std::string name) : h_(std::move(h)), name_(std::move(name)) {
  if (h_.empty()) throw ArgumentError("taper needs at least one function");
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (!h_[i]) throw ArgumentError("taper function is empty");
    const double H = squared_integral(h_[i]);
    if (!(H > 0.0)) throw ArgumentError("taper " + std::to_string(i + 1) + " has zero L2 norm on [0, 1]");
    H_.push_back(H);
  }
}

Taper Taper::cosine_bell() { return Taper({[](double u) { return longmem::cosine_bell(u); }}, "cosine-bell"); }

Taper Taper::constant() { return Taper({[](double) { return 1.0; }}, "constant"); }

const Taper::Function& Taper::h(Eigen::Index i) const {
  return h_.size() == 1 ? h_.front() : h_.at(static_cast<std::size_t>(i));
}

double Taper::H(Eigen::Index i) const { return H_.size() == 1 ? H_.front() : H_.at(static_cast<std::size_t>(i)); }

SpectralEstimate tapered_periodogram(const MultiSeries& series, const FrequencyGrid& grid, const Taper& taper,
                                     const SpectralOptions& options) {
  if (grid.n() != series.n()) throw ArgumentError("grid and series disagree on n");
  if (taper.count() != 1 && static_cast<Eigen::Index>(taper.count()) != series.q())
    throw ArgumentError("taper count must be 1 or q");
  const long n = series.n();
  Eigen::MatrixXd y = prepared(series, options).values();
  for (Eigen::Index i = 0; i < series.q(); ++i) {
    Eigen::VectorXd L(n);
    for (long t = 1; t <= n; ++t) L[t - 1] = taper.h(i)(static_cast<double>(t) / static_cast<double>(n));
    const double norm2 = L.squaredNorm();
    if (!(norm2 > 0.0)) throw NumericalError("taper " + std::to_string(i + 1) + " vanishes on every sample point");
    y.col(i) = y.col(i).cwiseProduct(L / std::sqrt(norm2));
  }
  const Eigen::MatrixXcd w = kernels::fourier_sums(y, grid.indices(), options.exec) / std::sqrt(kTwoPi);
  std::vector<Eigen::MatrixXcd> mats(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) mats[k] = outer(w.col(static_cast<Eigen::Index>(k)));
  return SpectralEstimate(grid, std::move(mats), SpectralKind::tapered);
}

}  // namespace longmem
