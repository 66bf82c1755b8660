#include "longmem/inference.hpp"

#include "longmem/errors.hpp"
#include "longmem/linalg.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace longmem {

Eigen::MatrixXd corrected_g(const Eigen::VectorXd& d_hat, const Eigen::MatrixXd& g_hat) {
  const Eigen::Index q = d_hat.size();
  if (g_hat.rows() != q || g_hat.cols() != q) throw ArgumentError("G must be q x q");
  Eigen::MatrixXd out = g_hat;
  for (Eigen::Index r = 0; r < q; ++r) {
    for (Eigen::Index s = 0; s < q; ++s) {
      if (r == s) continue;
      const double gap = d_hat[r] - d_hat[s];
      if (std::abs(gap) >= 1.0 - 1e-9)
        throw NumericalError("|d_" + std::to_string(r + 1) + " - d_" + std::to_string(s + 1) +
                             "| too close to 1 for the cosine correction");
      out(r, s) = g_hat(r, s) / std::cos(std::numbers::pi * gap / 2.0);
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd inverse(const Eigen::MatrixXd& a, const char* what) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw NumericalError(std::string(what) + " is singular");
  return lu.inverse();
}

}  // namespace

AsymptoticCov omega(const Eigen::VectorXd& d, const Eigen::MatrixXd& G0) {
  const Eigen::Index q = d.size();
  if (G0.rows() != q || G0.cols() != q) throw ArgumentError("G0 must be q x q");
  if (linalg::symmetric_defect(G0) > 1e-10 * std::max(1.0, G0.cwiseAbs().maxCoeff()))
    throw ArgumentError("G0 must be symmetric");
  if (!(linalg::min_eigenvalue(G0) > 0.0)) throw ArgumentError("G0 must be positive definite");

  Eigen::VectorXcd phase(q);
  for (Eigen::Index k = 0; k < q; ++k) phase[k] = std::polar(1.0, std::numbers::pi * d[k] / 2.0);
  const Eigen::MatrixXcd rotated =
      phase.asDiagonal() * G0.cast<std::complex<double>>() * phase.conjugate().asDiagonal();

  AsymptoticCov out;
  out.G0_hat = G0;
  out.d_used = d;
  out.script_G = rotated.real();
  out.little_g = rotated.imag();

  const Eigen::MatrixXd& sg = out.script_G;
  const Eigen::MatrixXd& g = out.little_g;
  const Eigen::MatrixXd sg_inv = inverse(sg, "Re[E G0 E*]");
  // Hadamard product with the matrix inverse.
  const Eigen::MatrixXd A = sg.cwiseProduct(sg_inv) + Eigen::MatrixXd::Identity(q, q);
  const Eigen::MatrixXd sg_inv_g = sg_inv * g;
  out.Sigma = A + (sg_inv * g * sg_inv).cwiseProduct(g) - sg_inv_g.cwiseProduct(sg_inv_g.transpose());
  const Eigen::MatrixXd A_inv = inverse(A, "script_G (.) inv(script_G) + I");
  out.Omega = 0.5 * A_inv * out.Sigma * A_inv;
  out.Omega = 0.5 * (out.Omega + out.Omega.transpose());
  return out;
}

WaldTest wald_test(const Eigen::MatrixXd& R, const Eigen::VectorXd& nu, const Eigen::VectorXd& d_hat,
                   const Eigen::MatrixXd& Omega_hat, long m) {
  const Eigen::Index s = R.rows();
  const Eigen::Index q = d_hat.size();
  if (s < 1 || s > q || R.cols() != q) throw ArgumentError("R must be s x q with 1 <= s <= q");
  if (nu.size() != s) throw ArgumentError("nu must have one entry per row of R");
  if (Omega_hat.rows() != q || Omega_hat.cols() != q) throw ArgumentError("Omega must be q x q");
  if (m < 1) throw ArgumentError("m must be positive");
  if (linalg::rank(R) != s) throw NumericalError("restriction matrix R is rank deficient");

  const Eigen::MatrixXd omega_psd = linalg::floor_psd(Omega_hat, 1e-9);
  const Eigen::MatrixXd middle = R * omega_psd * R.transpose();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(middle);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || linalg::rank(middle) != s)
    throw NumericalError("R Omega R' is singular");
  const Eigen::VectorXd diff = R * d_hat - nu;

  WaldTest test;
  test.R = R;
  test.nu = nu;
  test.dof = static_cast<int>(s);
  test.T = std::max(0.0, static_cast<double>(m) * diff.dot(ldlt.solve(diff)));
  test.p_value = chi2_sf(test.T, test.dof);
  return test;
}

Eigen::MatrixXd common_d_restriction(Eigen::Index q) {
  if (q < 2) throw ArgumentError("a common-d test needs q >= 2");
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(q - 1, q);
  R.leftCols(q - 1) += Eigen::MatrixXd::Identity(q - 1, q - 1);
  R.rightCols(q - 1) -= Eigen::MatrixXd::Identity(q - 1, q - 1);
  return R;
}

Eigen::MatrixXd i0_restriction(Eigen::Index q) { return Eigen::MatrixXd::Identity(q, q); }

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw ArgumentError("gamma_q needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;
  if (x < a + 1.0) {
    // P(a, x) = e^-x x^a / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < max_iter; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return std::max(0.0, 1.0 - sum * std::exp(log_prefactor));
  }
  // Modified Lentz evaluation of the continued fraction for Q(a, x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return std::min(1.0, std::exp(log_prefactor) * h);
}

double chi2_sf(double x, int s) {
  if (s < 1) throw ArgumentError("chi-square degrees of freedom must be positive");
  if (std::isnan(x)) throw ArgumentError("chi-square argument is NaN");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * s, 0.5 * x);
}

}  // namespace longmem
