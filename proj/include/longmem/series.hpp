#pragma once

#include <Eigen/Dense>

#include <span>

namespace longmem {

// n x q observation matrix: row t is X_t, column i is component i.
class MultiSeries {
 public:
  // Throws ArgumentError unless n >= 2, q >= 1 and every entry is finite.
  explicit MultiSeries(Eigen::MatrixXd values);

  Eigen::Index n() const noexcept { return values_.rows(); }
  Eigen::Index q() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

  // Copy with each column's sample mean subtracted.
  MultiSeries centered() const;
  // Copy with the columns reordered: column k of the result is column order[k].
  MultiSeries permuted(std::span<const int> order) const;

 private:
  Eigen::MatrixXd values_;
};

}  // namespace longmem
