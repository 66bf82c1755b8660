#pragma once

#include <Eigen/Dense>

#include <optional>

namespace longmem::linalg {

// Largest |A - A^*| entry.
double hermitian_defect(const Eigen::MatrixXcd& a);
double symmetric_defect(const Eigen::MatrixXd& a);

double min_eigenvalue(const Eigen::MatrixXcd& a);
double min_eigenvalue(const Eigen::MatrixXd& a);

// log det of a symmetric matrix via Cholesky; nullopt when not positive definite.
std::optional<double> log_det_spd(const Eigen::MatrixXd& a);

// Symmetrized copy with eigenvalues in (-tol, 0) floored to zero.
// Throws NumericalError if an eigenvalue is <= -tol.
Eigen::MatrixXd floor_psd(const Eigen::MatrixXd& a, double tol);

// Numerical rank from the singular values, relative threshold.
Eigen::Index rank(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

}  // namespace longmem::linalg
