#include "longmem/optimize.hpp"

#include "longmem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace longmem {
namespace {

struct Vertex {
  Eigen::VectorXd x;
  double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                             const NelderMeadOptions& options) {
  const Eigen::Index dim = x0.size();
  if (dim == 0 || lower.size() != dim || upper.size() != dim) throw ArgumentError("dimension mismatch");

  NelderMeadResult result;
  auto clamp = [&](Eigen::VectorXd x) {
    return Eigen::VectorXd(x.cwiseMax(lower).cwiseMin(upper));
  };
  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<std::size_t>(dim + 1));
  const Eigen::VectorXd start = clamp(x0);
  simplex.push_back({start, eval(start)});
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::VectorXd x = start;
    const double step = options.initial_step * (upper[i] - lower[i]);
    x[i] = (x[i] + step <= upper[i]) ? x[i] + step : x[i] - step;
    x = clamp(x);
    simplex.push_back({x, eval(x)});
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t k = 1; k < simplex.size(); ++k)
      d = std::max(d, (simplex[k].x - simplex[0].x).cwiseAbs().maxCoeff());
    return d;
  };

  order();
  while (true) {
    result.diameter = diameter();
    const double spread = simplex.back().f - simplex.front().f;
    if (result.diameter < options.xtol && std::isfinite(spread) && spread <= options.ftol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iterations) break;
    ++result.iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index k = 0; k < dim; ++k) centroid += simplex[static_cast<std::size_t>(k)].x;
    centroid /= static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second = simplex[simplex.size() - 2].f;

    const Eigen::VectorXd xr = clamp(centroid + (centroid - worst.x));
    const double fr = eval(xr);
    if (fr < f_best) {
      const Eigen::VectorXd xe = clamp(centroid + 2.0 * (centroid - worst.x));
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < f_second) {
      worst = {xr, fr};
    } else {
      bool shrink = false;
      if (fr < worst.f) {
        const Eigen::VectorXd xc = clamp(centroid + 0.5 * (xr - centroid));
        const double fc = eval(xc);
        if (fc <= fr) worst = {xc, fc};
        else shrink = true;
      } else {
        const Eigen::VectorXd xc = clamp(centroid + 0.5 * (worst.x - centroid));
        const double fc = eval(xc);
        if (fc < worst.f) worst = {xc, fc};
        else shrink = true;
      }
      if (shrink) {
        const Eigen::VectorXd best = simplex.front().x;
        for (std::size_t k = 1; k < simplex.size(); ++k) {
          simplex[k].x = clamp(best + 0.5 * (simplex[k].x - best));
          simplex[k].f = eval(simplex[k].x);
        }
      }
    }
    order();
  }

  result.x = simplex.front().x;
  result.value = simplex.front().f;
  return result;
}

}  // namespace longmem
