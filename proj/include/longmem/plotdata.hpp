#pragma once

#include "json.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace longmem {

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<long> counts;
};

// Freedman-Diaconis bin width 2 IQR R^(-1/3); a single bin when it is zero.
Histogram histogram(std::span<const double> values);

struct Density {
  std::vector<double> grid;  // 201 points
  std::vector<double> value;
  double bandwidth = 0.0;
};

// Gaussian kernel density with Silverman bandwidth 1.06 sd R^(-1/5) on 201
// points spanning [min - 3h, max + 3h]. Constant input yields a unit-mass
// spike at the centre point of a grid of width one around the value.
Density kernel_density(std::span<const double> values);

// Histogram, density and pairwise scatter for each column of a
// replications x q estimate matrix. Throws InputError for fewer than 10 rows.
nlohmann::json plot_data(const Eigen::MatrixXd& estimates, const std::vector<std::string>& names);

}  // namespace longmem
