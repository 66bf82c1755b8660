#pragma once

#include <Eigen/Dense>

#include <functional>

namespace longmem {

struct NelderMeadOptions {
  double xtol = 1e-7;      // simplex diameter (max vertex distance to the best vertex)
  double ftol = 1e-10;     // spread of objective values over the simplex
  int max_iterations = 1000;
  double initial_step = 0.05;  // fraction of the box width
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double diameter = 0.0;
  bool converged = false;
};

// Nelder-Mead on the box [lower, upper]: trial points are clamped into the
// box. The objective may return +inf to mark infeasible points.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper, const NelderMeadOptions& options = {});

}  // namespace longmem
