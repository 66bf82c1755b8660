#include "longmem/series.hpp"

#include "longmem/errors.hpp"

#include <cmath>
#include <string>

namespace longmem {

MultiSeries::MultiSeries(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 2) throw ArgumentError("series needs at least 2 observations");
  if (values_.cols() < 1) throw ArgumentError("series needs at least 1 component");
  for (Eigen::Index i = 0; i < values_.cols(); ++i)
    for (Eigen::Index t = 0; t < values_.rows(); ++t)
      if (!std::isfinite(values_(t, i)))
        throw ArgumentError("non-finite value at observation " + std::to_string(t + 1) +
                            ", component " + std::to_string(i + 1));
}

MultiSeries MultiSeries::centered() const {
  Eigen::MatrixXd c = values_;
  c.rowwise() -= values_.colwise().mean();
  return MultiSeries(std::move(c));
}

MultiSeries MultiSeries::permuted(std::span<const int> order) const {
  if (static_cast<Eigen::Index>(order.size()) != q()) throw ArgumentError("permutation size mismatch");
  Eigen::MatrixXd p(n(), q());
  for (Eigen::Index k = 0; k < q(); ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    if (src < 0 || src >= q()) throw ArgumentError("permutation index out of range");
    p.col(k) = values_.col(src);
  }
  return MultiSeries(std::move(p));
}

}  // namespace longmem
