#pragma once

#include <Eigen/Dense>

namespace longmem {

// tau(d) (.) G with tau_rs = 1 / cos(pi (d_r - d_s) / 2). Throws NumericalError
// when some |d_r - d_s| >= 1 - 1e-9.
Eigen::MatrixXd corrected_g(const Eigen::VectorXd& d_hat, const Eigen::MatrixXd& g_hat);

// Limiting covariance of sqrt(m) (d_hat - d0).
//
// With E = diag(exp(i pi d_k / 2)) and E G E^* = script_G + i little_g:
//   A     = script_G (.) inv(script_G) + I        ((.) is the Hadamard product
//                                                   with the matrix inverse, not
//                                                   an entrywise reciprocal)
//   Sigma = A + (inv(script_G) g inv(script_G)) (.) g - (inv(script_G) g) (.) (inv(script_G) g)'
//   Omega = 0.5 inv(A) Sigma inv(A)
struct AsymptoticCov {
  Eigen::MatrixXd G0_hat;
  Eigen::MatrixXd script_G;
  Eigen::MatrixXd little_g;
  Eigen::MatrixXd Sigma;
  Eigen::MatrixXd Omega;
  Eigen::VectorXd d_used;
};

// Throws ArgumentError for a non-symmetric or non-PD G0, NumericalError when
// script_G or A is singular.
AsymptoticCov omega(const Eigen::VectorXd& d, const Eigen::MatrixXd& G0);

struct WaldTest {
  Eigen::MatrixXd R;
  Eigen::VectorXd nu;
  double T = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// T = m (R d - nu)' inv(R Omega R') (R d - nu), chi^2_s under H0. Omega is
// floored to PSD first (eigenvalues in (-1e-9, 0) become 0). Throws
// NumericalError for rank-deficient R or singular R Omega R'.
WaldTest wald_test(const Eigen::MatrixXd& R, const Eigen::VectorXd& nu, const Eigen::VectorXd& d_hat,
                   const Eigen::MatrixXd& Omega_hat, long m);

// (I_{q-1} | 0) - (0 | I_{q-1}): all components share one d.
Eigen::MatrixXd common_d_restriction(Eigen::Index q);
// I_q: every component is I(0).
Eigen::MatrixXd i0_restriction(Eigen::Index q);

// Upper tail of chi^2_s, Q(s/2, x/2).
double chi2_sf(double x, int s);

// Regularized upper incomplete gamma Q(a, x): power series for x < a + 1,
// Lentz continued fraction otherwise.
double gamma_q(double a, double x);

}  // namespace longmem
