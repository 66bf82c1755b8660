#include "longmem/varfima.hpp"

#include "longmem/errors.hpp"

#include <cmath>
#include <string>

namespace longmem {

std::vector<double> frac_ma_coeffs(double d, long K) {
  if (!(std::abs(d) < 0.5)) throw ArgumentError("fractional parameter must satisfy |d| < 0.5");
  if (K < 0) throw ArgumentError("truncation point must be nonnegative");
  std::vector<double> psi(static_cast<std::size_t>(K + 1));
  psi[0] = 1.0;
  for (long k = 1; k <= K; ++k)
    psi[static_cast<std::size_t>(k)] =
        psi[static_cast<std::size_t>(k - 1)] * (static_cast<double>(k - 1) + d) / static_cast<double>(k);
  return psi;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t base, std::uint64_t r) { return splitmix64(splitmix64(base) + r); }

GaussianStream::GaussianStream(std::uint64_t seed, Eigen::MatrixXd corr_factor)
    : engine_(splitmix64(seed)), factor_(std::move(corr_factor)) {
  if (factor_.rows() != factor_.cols() || factor_.rows() < 1) throw ArgumentError("correlation factor must be square");
}

Eigen::VectorXd GaussianStream::next() {
  Eigen::VectorXd z(factor_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal_(engine_);
  return factor_.triangularView<Eigen::Lower>() * z;
}

Eigen::MatrixXd GaussianStream::take(long count) {
  Eigen::MatrixXd out(count, factor_.rows());
  for (long t = 0; t < count; ++t) out.row(t) = next().transpose();
  return out;
}

Eigen::MatrixXd gaussian_stream(std::uint64_t seed, long count, const Eigen::MatrixXd& corr_factor) {
  GaussianStream stream(seed, corr_factor);
  return stream.take(count);
}

Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& corr) {
  Eigen::LLT<Eigen::MatrixXd> llt(corr);
  if (llt.info() != Eigen::Success) throw ArgumentError("innovation correlation matrix is not positive definite");
  return llt.matrixL();
}

VarfimaSpec VarfimaSpec::bivariate(double d1, double d2, double rho, long n, long truncation, std::uint64_t seed) {
  VarfimaSpec spec;
  spec.d = Eigen::Vector2d(d1, d2);
  spec.innovation_corr = Eigen::Matrix2d{{1.0, rho}, {rho, 1.0}};
  spec.n = n;
  spec.truncation = truncation;
  spec.seed = seed;
  return spec;
}

VarfimaSpec VarfimaSpec::univariate(double d, long n, long truncation, std::uint64_t seed) {
  VarfimaSpec spec;
  spec.d = Eigen::VectorXd::Constant(1, d);
  spec.innovation_corr = Eigen::MatrixXd::Identity(1, 1);
  spec.n = n;
  spec.truncation = truncation;
  spec.seed = seed;
  return spec;
}

void VarfimaSpec::validate() const {
  const Eigen::Index q = d.size();
  if (q < 1) throw ArgumentError("d must have at least one component");
  for (Eigen::Index k = 0; k < q; ++k)
    if (!(std::abs(d[k]) < 0.5)) throw ArgumentError("d_" + std::to_string(k + 1) + " must lie in (-0.5, 0.5)");
  if (innovation_corr.rows() != q || innovation_corr.cols() != q)
    throw ArgumentError("innovation correlation must be q x q");
  if ((innovation_corr - innovation_corr.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ArgumentError("innovation correlation must be symmetric");
  if ((innovation_corr.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12)
    throw ArgumentError("innovation correlation must have a unit diagonal");
  if (n < 2) throw ArgumentError("sample size must be at least 2");
  if (truncation < 0) throw ArgumentError("truncation point must be nonnegative");
  correlation_factor(innovation_corr);
}

MultiSeries simulate(const VarfimaSpec& spec, kernels::Exec exec) {
  spec.validate();
  const Eigen::Index q = spec.d.size();
  const long K = spec.truncation;
  const Eigen::MatrixXd eps = gaussian_stream(spec.seed, spec.n + K, correlation_factor(spec.innovation_corr));
  Eigen::MatrixXd x(spec.n, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    const std::vector<double> psi = frac_ma_coeffs(spec.d[i], K);
    const Eigen::VectorXd column = eps.col(i);
    const std::vector<double> out =
        kernels::ma_filter(psi, std::span<const double>(column.data(), static_cast<std::size_t>(column.size())), exec);
    x.col(i) = Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
  }
  return MultiSeries(std::move(x));
}

}  // namespace longmem
