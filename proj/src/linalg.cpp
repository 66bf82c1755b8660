#include "longmem/linalg.hpp"

#include "longmem/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace longmem::linalg {

double hermitian_defect(const Eigen::MatrixXcd& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double symmetric_defect(const Eigen::MatrixXd& a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::optional<double> log_det_spd(const Eigen::MatrixXd& a) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
  double s = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag[i] > 0.0) || !std::isfinite(diag[i])) return std::nullopt;
    s += std::log(diag[i]);
  }
  return 2.0 * s;
}

Eigen::MatrixXd floor_psd(const Eigen::MatrixXd& a, double tol) {
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd ev = es.eigenvalues();
  bool clipped = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] <= -tol) throw NumericalError("matrix is not positive semidefinite");
    if (ev[i] < 0.0) {
      ev[i] = 0.0;
      clipped = true;
    }
  }
  if (!clipped) return sym;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::Index rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++r;
  return r;
}

}  // namespace longmem::linalg
