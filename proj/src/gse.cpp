#include "longmem/gse.hpp"

#include "longmem/errors.hpp"
#include "longmem/linalg.hpp"
#include "longmem/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace longmem {

// ---------------------------------------------------------------------------
// Parameter space

ParamSpace ParamSpace::standard(Eigen::Index q) {
  return {Eigen::VectorXd::Constant(q, -0.499), Eigen::VectorXd::Constant(q, 0.499)};
}

ParamSpace ParamSpace::omega_beta(Eigen::Index q, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ArgumentError("omega_beta needs beta in (0, 1]");
  return {Eigen::VectorXd::Constant(q, std::max(-beta / 2.0, -0.499)), Eigen::VectorXd::Zero(q)};
}

void ParamSpace::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size()) throw ArgumentError("parameter box has mismatched bounds");
  for (Eigen::Index k = 0; k < lower.size(); ++k) {
    if (!(lower[k] < upper[k])) throw ArgumentError("parameter box needs lower < upper in component " + std::to_string(k + 1));
    if (!(lower[k] > -0.5 && upper[k] < 0.5))
      throw ArgumentError("parameter box must lie inside (-0.5, 0.5) in component " + std::to_string(k + 1));
  }
}

bool ParamSpace::contains(const Eigen::VectorXd& d) const {
  return d.size() == lower.size() && (d.array() >= lower.array()).all() && (d.array() <= upper.array()).all();
}

bool ParamSpace::on_boundary(const Eigen::VectorXd& d, double tol) const {
  return ((d - lower).array().abs() <= tol).any() || ((upper - d).array().abs() <= tol).any();
}

long bandwidth(long n, double alpha) {
  if (n < 1 || !(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("bandwidth needs n >= 1 and alpha in (0, 1)");
  return static_cast<long>(std::floor(std::pow(static_cast<double>(n), alpha) + 1e-9));
}

// ---------------------------------------------------------------------------
// Objective

GseObjective::GseObjective(const SpectralEstimate& estimate, long m) : q_(estimate.q()), m_(m) {
  if (m < 1 || static_cast<std::size_t>(m) > estimate.size())
    throw ArgumentError("m=" + std::to_string(m) + " outside 1.." + std::to_string(estimate.size()));
  double sum = 0.0;
  for (long j = 0; j < m; ++j) {
    const double lambda = estimate.grid().lambda(static_cast<std::size_t>(j));
    if (!(lambda > 0.0)) throw ArgumentError("objective frequencies must be positive");
    const double l = std::log(lambda);
    log_lambda_.push_back(l);
    sum += l;
    const Eigen::MatrixXd re = estimate.at(static_cast<std::size_t>(j)).real();
    re_.push_back(0.5 * (re + re.transpose()));
  }
  mean_log_lambda_ = sum / static_cast<double>(m);
}

void GseObjective::check_d(const Eigen::VectorXd& d) const {
  if (d.size() != q_) throw ArgumentError("d has " + std::to_string(d.size()) + " entries, expected " + std::to_string(q_));
}

Eigen::MatrixXd GseObjective::J(const Eigen::VectorXd& d, int power) const {
  check_d(d);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(q_, q_);
  Eigen::VectorXd scale(q_);
  for (long j = 0; j < m_; ++j) {
    const double l = log_lambda_[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < q_; ++i) scale[i] = std::exp(d[i] * l);
    const double lp = power == 0 ? 1.0 : (power == 1 ? l : std::pow(l, power));
    const Eigen::MatrixXd& re = re_[static_cast<std::size_t>(j)];
    for (Eigen::Index s = 0; s < q_; ++s)
      for (Eigen::Index r = 0; r <= s; ++r) out(r, s) += lp * scale[r] * scale[s] * re(r, s);
  }
  out /= static_cast<double>(m_);
  for (Eigen::Index s = 0; s < q_; ++s)
    for (Eigen::Index r = s + 1; r < q_; ++r) out(r, s) = out(s, r);
  return out;
}

double GseObjective::value(const Eigen::VectorXd& d) const {
  const auto logdet = linalg::log_det_spd(g_hat(d));
  if (!logdet) return std::numeric_limits<double>::infinity();
  return *logdet - 2.0 * d.sum() * mean_log_lambda_;
}

namespace {

Eigen::MatrixXd inverse_spd(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("G(d) is not positive definite");
  return llt.solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Eigen::MatrixXd indicator(Eigen::Index q, Eigen::Index r) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(q, q);
  e(r, r) = 1.0;
  return e;
}

}  // namespace

Eigen::VectorXd GseObjective::score(const Eigen::VectorXd& d) const {
  const Eigen::MatrixXd ginv = inverse_spd(g_hat(d));
  const Eigen::MatrixXd j1 = J(d, 1);
  Eigen::VectorXd out(q_);
  for (Eigen::Index k = 0; k < q_; ++k) {
    const Eigen::MatrixXd ik = indicator(q_, k);
    const Eigen::MatrixXd dg = ik * j1 + j1 * ik;
    out[k] = -2.0 * mean_log_lambda_ + (ginv * dg).trace();
  }
  return out;
}

Eigen::MatrixXd GseObjective::hessian(const Eigen::VectorXd& d) const {
  const Eigen::MatrixXd ginv = inverse_spd(g_hat(d));
  const Eigen::MatrixXd j1 = J(d, 1);
  const Eigen::MatrixXd j2 = J(d, 2);
  std::vector<Eigen::MatrixXd> ind, dg;
  for (Eigen::Index k = 0; k < q_; ++k) {
    ind.push_back(indicator(q_, k));
    dg.push_back(ind.back() * j1 + j1 * ind.back());
  }
  Eigen::MatrixXd h(q_, q_);
  for (Eigen::Index r = 0; r < q_; ++r) {
    for (Eigen::Index s = 0; s < q_; ++s) {
      const auto& ir = ind[static_cast<std::size_t>(r)];
      const auto& is = ind[static_cast<std::size_t>(s)];
      const Eigen::MatrixXd d2g = ir * is * j2 + ir * j2 * is + is * j2 * ir + j2 * ir * is;
      h(r, s) = (-ginv * dg[static_cast<std::size_t>(r)] * ginv * dg[static_cast<std::size_t>(s)] + ginv * d2g).trace();
    }
  }
  return h;
}

Eigen::MatrixXd g_hat(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m) {
  return GseObjective(estimate, m).g_hat(d);
}
double objective(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m) {
  return GseObjective(estimate, m).value(d);
}
Eigen::VectorXd score(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m) {
  return GseObjective(estimate, m).score(d);
}
Eigen::MatrixXd hessian(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m) {
  return GseObjective(estimate, m).hessian(d);
}

Eigen::MatrixXcd model_spectrum(const Eigen::VectorXd& d, const Eigen::MatrixXd& G, double lambda) {
  if (G.rows() != d.size() || G.cols() != d.size()) throw ArgumentError("G must be q x q");
  if (!(lambda >= 0.0 && lambda <= std::numbers::pi)) throw ArgumentError("lambda must lie in [0, pi]");
  if (lambda == 0.0 && (d.array() > 0.0).any()) throw NumericalError("spectral pole at lambda = 0 for d > 0");
  Eigen::VectorXcd diag(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k)
    diag[k] = std::pow(lambda, -d[k]) * std::polar(1.0, (std::numbers::pi - lambda) * d[k] / 2.0);
  return diag.asDiagonal() * G.cast<std::complex<double>>() * diag.conjugate().asDiagonal();
}

// ---------------------------------------------------------------------------
// Minimization

std::vector<Eigen::VectorXd> start_points(const ParamSpace& space, int grid_points) {
  const Eigen::Index q = space.q();
  const Eigen::Index gridded = std::min<Eigen::Index>(q, 3);
  long total = 1;
  for (Eigen::Index k = 0; k < gridded; ++k) total *= grid_points;
  const Eigen::VectorXd centre = 0.5 * (space.lower + space.upper);
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(static_cast<std::size_t>(total + 1));
  for (long code = 0; code < total; ++code) {
    Eigen::VectorXd x = centre;
    long rest = code;
    for (Eigen::Index k = 0; k < gridded; ++k) {
      const long cell = rest % grid_points;
      rest /= grid_points;
      x[k] = space.lower[k] + (static_cast<double>(cell) + 0.5) / grid_points * (space.upper[k] - space.lower[k]);
    }
    starts.push_back(x);
  }
  starts.push_back(Eigen::VectorXd::Zero(q).cwiseMax(space.lower).cwiseMin(space.upper));
  return starts;
}

namespace {

bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

GseFit minimize(const GseObjective& objective, const ParamSpace& space, const OptimizerOptions& options,
                SpectralKind kind) {
  space.validate();
  if (space.q() != objective.q()) throw ArgumentError("parameter box dimension differs from the series dimension");
  const std::vector<Eigen::VectorXd> starts = start_points(space, options.grid_points);
  const long count = static_cast<long>(starts.size());

  NelderMeadOptions nm;
  nm.xtol = options.xtol;
  nm.ftol = options.ftol;
  nm.max_iterations = options.max_iterations_per_dim * static_cast<int>(objective.q());
  auto f = [&objective](const Eigen::VectorXd& d) { return objective.value(d); };

  std::vector<NelderMeadResult> results(static_cast<std::size_t>(count));
  std::vector<char> feasible(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(dynamic) if (options.exec == kernels::Exec::parallel)
  for (long s = 0; s < count; ++s) {
    const auto& x0 = starts[static_cast<std::size_t>(s)];
    if (!std::isfinite(objective.value(x0))) continue;
    feasible[static_cast<std::size_t>(s)] = 1;
    results[static_cast<std::size_t>(s)] = nelder_mead(f, x0, space.lower, space.upper, nm);
  }

  int failed = 0;
  bool any_converged = false;
  for (long s = 0; s < count; ++s) {
    if (!feasible[static_cast<std::size_t>(s)]) ++failed;
    else if (results[static_cast<std::size_t>(s)].converged) any_converged = true;
  }
  if (failed == count)
    throw EstimationError("G(d) is not positive definite at any of the " + std::to_string(count) + " starting points",
                          static_cast<int>(count), failed);

  const NelderMeadResult* best = nullptr;
  for (long s = 0; s < count; ++s) {
    const auto& r = results[static_cast<std::size_t>(s)];
    if (!feasible[static_cast<std::size_t>(s)] || (any_converged && !r.converged)) continue;
    if (!std::isfinite(r.value)) continue;
    if (best == nullptr || r.value < best->value - 1e-12 ||
        (std::abs(r.value - best->value) <= 1e-12 && lexicographically_less(r.x, best->x)))
      best = &r;
  }
  if (best == nullptr)
    throw EstimationError("optimizer found no finite objective value", static_cast<int>(count), failed);

  GseFit fit;
  fit.d_hat = best->x;
  fit.g_hat = objective.g_hat(best->x);
  fit.objective = best->value;
  fit.iterations = best->iterations;
  fit.converged = best->converged;
  fit.at_boundary = space.on_boundary(best->x, options.xtol);
  fit.m = objective.m();
  fit.estimator_kind = kind;
  fit.starts = static_cast<int>(count);
  fit.failed_starts = failed;
  return fit;
}

long resolve_m(const EstimateConfig& config, long n) { return config.m > 0 ? config.m : bandwidth(n, config.alpha); }

long resolve_ell(const EstimateConfig& config, long n) {
  return config.ell > 0 ? config.ell : bandwidth(n, config.beta);
}

SpectralEstimate spectral_estimate(const MultiSeries& series, const EstimateConfig& config) {
  const long n = series.n();
  const long m = resolve_m(config, n);
  if (m < 1 || 2 * m >= n)
    throw ArgumentError("need 1 <= m < n/2, got m=" + std::to_string(m) + " for n=" + std::to_string(n));
  const FrequencyGrid grid = FrequencyGrid::fourier(n, m);
  switch (config.kind) {
    case SpectralKind::raw:
      return periodogram(series, grid, config.spectral);
    case SpectralKind::smoothed: {
      const WeightScheme scheme =
          bartlett_weights(n, resolve_ell(config, n), config.normalize_weights).with_skip_pole(config.skip_pole);
      return smoothed_periodogram(series, grid, scheme, config.spectral);
    }
    case SpectralKind::tapered:
      return tapered_periodogram(series, grid, Taper::cosine_bell(), config.spectral);
  }
  throw ArgumentError("unknown estimator kind");
}

GseFit estimate(const MultiSeries& series, const EstimateConfig& config) {
  const ParamSpace space = config.space.q() == 0 ? ParamSpace::standard(series.q()) : config.space;
  space.validate();
  if (space.q() != series.q()) throw ArgumentError("parameter box dimension differs from the series dimension");
  const SpectralEstimate f = spectral_estimate(series, config);
  const GseObjective objective(f, static_cast<long>(f.size()));
  return minimize(objective, space, config.optimizer, config.kind);
}

}  // namespace longmem
