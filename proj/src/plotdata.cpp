#include "longmem/plotdata.hpp"

#include "longmem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace longmem {
namespace {

// Linear interpolation between order statistics (R's type 7).
double quantile(std::vector<double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double sample_sd(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

Histogram histogram(std::span<const double> values) {
  if (values.empty()) throw InputError("histogram of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double width = 2.0 * iqr * std::pow(static_cast<double>(sorted.size()), -1.0 / 3.0);

  Histogram h;
  if (hi == lo) {
    h.edges = {lo - 0.5, hi + 0.5};
    h.counts = {static_cast<long>(sorted.size())};
    return h;
  }
  if (!(width > 0.0)) {
    h.edges = {lo, hi};
    h.counts = {static_cast<long>(sorted.size())};
    return h;
  }
  const long bins = std::clamp(static_cast<long>(std::ceil((hi - lo) / width)), 1L, 10000L);
  const double step = (hi - lo) / static_cast<double>(bins);
  for (long b = 0; b <= bins; ++b) h.edges.push_back(lo + static_cast<double>(b) * step);
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : sorted) {
    const long b = std::min(bins - 1, static_cast<long>((v - lo) / step));
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

Density kernel_density(std::span<const double> values) {
  if (values.size() < 2) throw InputError("kernel density needs at least two values");
  constexpr int points = 201;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double sd = sample_sd(values);
  Density d;
  d.grid.resize(points);
  d.value.assign(points, 0.0);
  if (!(sd > 0.0)) {
    const double step = 1.0 / (points - 1);
    for (int k = 0; k < points; ++k) d.grid[static_cast<std::size_t>(k)] = lo - 0.5 + k * step;
    d.value[points / 2] = 1.0 / step;
    return d;
  }
  const double R = static_cast<double>(values.size());
  d.bandwidth = 1.06 * sd * std::pow(R, -0.2);
  const double a = lo - 3.0 * d.bandwidth;
  const double b = hi + 3.0 * d.bandwidth;
  const double norm = 1.0 / (R * d.bandwidth * std::sqrt(2.0 * std::numbers::pi));
  for (int k = 0; k < points; ++k) {
    const double x = a + (b - a) * k / (points - 1);
    double s = 0.0;
    for (double v : values) {
      const double z = (x - v) / d.bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    d.grid[static_cast<std::size_t>(k)] = x;
    d.value[static_cast<std::size_t>(k)] = s * norm;
  }
  return d;
}

nlohmann::json plot_data(const Eigen::MatrixXd& estimates, const std::vector<std::string>& names) {
  if (estimates.rows() < 10)
    throw InputError("plot data needs at least 10 estimate rows, got " + std::to_string(estimates.rows()));
  if (static_cast<Eigen::Index>(names.size()) != estimates.cols()) throw InputError("one name per column required");
  nlohmann::json out;
  out["schema"] = "longmem/1";
  out["rows"] = estimates.rows();
  out["components"] = nlohmann::json::array();
  std::vector<std::vector<double>> cols;
  for (Eigen::Index i = 0; i < estimates.cols(); ++i) {
    cols.emplace_back(estimates.col(i).data(), estimates.col(i).data() + estimates.rows());
    const Histogram h = histogram(cols.back());
    const Density k = kernel_density(cols.back());
    out["components"].push_back({{"name", names[static_cast<std::size_t>(i)]},
                                 {"histogram", {{"edges", h.edges}, {"counts", h.counts}}},
                                 {"density", {{"grid", k.grid}, {"value", k.value}, {"bandwidth", k.bandwidth}}}});
  }
  out["scatter"] = nlohmann::json::array();
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b)
      out["scatter"].push_back({{"x", names[a]}, {"y", names[b]}, {"x_values", cols[a]}, {"y_values", cols[b]}});
  return out;
}

}  // namespace longmem
