#pragma once

#include "longmem/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace longmem {

// Admissible box for d.
struct ParamSpace {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  // [-0.499, 0.499]^q.
  static ParamSpace standard(Eigen::Index q);
  // [-beta/2, 0]^q intersected with (-1/2, 0]^q; the open end is closed at -0.499.
  static ParamSpace omega_beta(Eigen::Index q, double beta);

  // Throws ArgumentError unless lower < upper inside (-0.5, 0.5)^q.
  void validate() const;
  Eigen::Index q() const noexcept { return lower.size(); }
  bool contains(const Eigen::VectorXd& d) const;
  bool on_boundary(const Eigen::VectorXd& d, double tol) const;
};

// floor(n^alpha), the usual bandwidth choice for m (and for ell with beta).
long bandwidth(long n, double alpha);

// The objective S(d) = log det G(d) - 2 sum_k d_k mean_j log(lambda_j) over the
// first m grid points of a spectral estimate, with
//   G(d) = m^-1 sum_j Re[diag(lambda_j^d) f_n(lambda_j) diag(lambda_j^d)].
// Only the real parts of f_n enter, so they are cached on construction.
class GseObjective {
 public:
  GseObjective(const SpectralEstimate& estimate, long m);

  Eigen::Index q() const noexcept { return q_; }
  long m() const noexcept { return m_; }
  double mean_log_lambda() const noexcept { return mean_log_lambda_; }

  // J_k(d) = m^-1 sum_j (log lambda_j)^k Re[diag(lambda_j^d) f_n diag(lambda_j^d)]; J_0 = G(d).
  Eigen::MatrixXd J(const Eigen::VectorXd& d, int power) const;
  Eigen::MatrixXd g_hat(const Eigen::VectorXd& d) const { return J(d, 0); }

  // +inf when G(d) is not positive definite.
  double value(const Eigen::VectorXd& d) const;
  // Throw NumericalError when G(d) is not positive definite.
  Eigen::VectorXd score(const Eigen::VectorXd& d) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& d) const;

 private:
  void check_d(const Eigen::VectorXd& d) const;

  Eigen::Index q_;
  long m_;
  std::vector<double> log_lambda_;
  // re_[j] = Re f_n(lambda_j), symmetric part only.
  std::vector<Eigen::MatrixXd> re_;
  double mean_log_lambda_;
};

Eigen::MatrixXd g_hat(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m);
double objective(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m);
Eigen::VectorXd score(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m);
Eigen::MatrixXd hessian(const Eigen::VectorXd& d, const SpectralEstimate& estimate, long m);

// Lambda(d) G Lambda(d)^* with Lambda = diag(lambda^-d_k exp(i(pi - lambda) d_k / 2)).
Eigen::MatrixXcd model_spectrum(const Eigen::VectorXd& d, const Eigen::MatrixXd& G, double lambda);

struct OptimizerOptions {
  double xtol = 1e-7;
  double ftol = 1e-10;
  int max_iterations_per_dim = 500;
  int grid_points = 5;  // per coordinate, over at most three coordinates
  kernels::Exec exec = kernels::Exec::parallel;
};

struct GseFit {
  Eigen::VectorXd d_hat;
  Eigen::MatrixXd g_hat;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;
  long m = 0;
  SpectralKind estimator_kind = SpectralKind::raw;
  int starts = 0;
  int failed_starts = 0;
};

// Starting points: a grid_points^min(q,3) grid of cell midpoints over the box
// (coordinates beyond the third held at the box centre) followed by the zero
// vector projected into the box.
std::vector<Eigen::VectorXd> start_points(const ParamSpace& space, int grid_points);

// Multi-start minimization of S over the box. Lowest objective among converged
// starts wins; ties within 1e-12 go to the lexicographically smallest d.
// Throws EstimationError when G(d) is not positive definite at every start.
GseFit minimize(const GseObjective& objective, const ParamSpace& space,
                const OptimizerOptions& options = {}, SpectralKind kind = SpectralKind::raw);

struct EstimateConfig {
  SpectralKind kind = SpectralKind::raw;
  long m = 0;          // 0 selects floor(n^alpha)
  double alpha = 0.85;
  long ell = 0;        // smoothed only; 0 selects floor(n^beta)
  double beta = 0.9;
  bool skip_pole = false;
  bool normalize_weights = true;
  ParamSpace space;    // empty selects ParamSpace::standard(q)
  OptimizerOptions optimizer;
  SpectralOptions spectral;
};

// Resolved m and ell for a sample size.
long resolve_m(const EstimateConfig& config, long n);
long resolve_ell(const EstimateConfig& config, long n);

SpectralEstimate spectral_estimate(const MultiSeries& series, const EstimateConfig& config);

GseFit estimate(const MultiSeries& series, const EstimateConfig& config);

}  // namespace longmem
