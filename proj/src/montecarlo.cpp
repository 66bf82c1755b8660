#include "longmem/montecarlo.hpp"

#include "longmem/csv.hpp"
#include "longmem/errors.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <sstream>

namespace longmem {

std::string EstimatorSpec::tag() const {
  switch (kind) {
    case SpectralKind::raw: return "LOB";
    case SpectralKind::smoothed: return skip_pole ? "SLOB" : "SLOB*";
    case SpectralKind::tapered: return "TLOB";
  }
  return "LOB";
}

void McDesign::validate() const {
  spec.validate();
  if (replications < 1) throw ArgumentError("replications must be at least 1");
  if (estimators.empty()) throw ArgumentError("at least one estimator is required");
  for (const auto& e : estimators) {
    if (!(e.alpha > 0.0 && e.alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    if (e.kind == SpectralKind::smoothed && !(e.beta > 0.0 && e.beta < 1.0))
      throw ArgumentError("beta must lie in (0, 1)");
  }
}

Summary summarize(std::span<const double> values, double d_true) {
  const std::size_t R = values.size();
  if (R < 2) throw ArgumentError("summary needs at least two values");
  double sum = 0.0;
  for (double v : values) sum += v;
  Summary s;
  s.mean = sum / static_cast<double>(R);
  double ss = 0.0;
  double se = 0.0;
  for (double v : values) {
    ss += (v - s.mean) * (v - s.mean);
    se += (v - d_true) * (v - d_true);
  }
  s.st_d = std::sqrt(ss / static_cast<double>(R - 1));
  s.mse = se / static_cast<double>(R);
  return s;
}

McTable run(const McDesign& design) {
  design.validate();
  const int R = design.replications;
  const Eigen::Index q = design.spec.d.size();
  const std::size_t E = design.estimators.size();

  std::vector<EstimateConfig> configs(E);
  for (std::size_t e = 0; e < E; ++e) {
    const auto& est = design.estimators[e];
    configs[e].kind = est.kind;
    configs[e].alpha = est.alpha;
    configs[e].beta = est.beta;
    configs[e].skip_pole = est.skip_pole;
    configs[e].optimizer = design.optimizer;
    configs[e].optimizer.exec = kernels::Exec::serial;
    configs[e].spectral.exec = kernels::Exec::serial;
  }

  McTable table;
  table.estimators = design.estimators;
  table.replications = R;
  table.estimates.assign(E, Eigen::MatrixXd::Constant(R, q, std::numeric_limits<double>::quiet_NaN()));

  const int threads = design.threads > 0 ? design.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int r = 0; r < R; ++r) {
    VarfimaSpec spec = design.spec;
    spec.seed = replication_seed(design.base_seed, static_cast<std::uint64_t>(r));
    const MultiSeries x = simulate(spec, kernels::Exec::serial);
    for (std::size_t e = 0; e < E; ++e) {
      try {
        const GseFit fit = estimate(x, configs[e]);
        table.estimates[e].row(r) = fit.d_hat.transpose();
      } catch (const EstimationError&) {
      } catch (const NumericalError&) {
      }
    }
  }

  for (std::size_t e = 0; e < E; ++e) {
    const auto& est = design.estimators[e];
    for (Eigen::Index i = 0; i < q; ++i) {
      std::vector<double> values;
      for (int r = 0; r < R; ++r)
        if (std::isfinite(table.estimates[e](r, i))) values.push_back(table.estimates[e](r, i));
      const int failed = R - static_cast<int>(values.size());
      if (failed > 0.05 * R)
        throw EstimationError(est.tag() + ": " + std::to_string(failed) + " of " + std::to_string(R) +
                                  " replications failed",
                              R, failed);
      McRow row;
      row.tag = est.tag();
      row.alpha = est.alpha;
      row.beta = est.kind == SpectralKind::smoothed ? est.beta : std::numeric_limits<double>::quiet_NaN();
      row.component = static_cast<int>(i) + 1;
      row.d_true = design.spec.d[i];
      row.used = static_cast<int>(values.size());
      row.failed = failed;
      if (values.size() >= 2) {
        const Summary s = summarize(values, row.d_true);
        row.mean = s.mean;
        row.st_d = s.st_d;
        row.mse = s.mse;
      } else {
        row.mean = values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.front();
        row.st_d = std::numeric_limits<double>::quiet_NaN();
        row.mse = values.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : (row.mean - row.d_true) * (row.mean - row.d_true);
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

std::string to_csv(const McTable& table) {
  std::ostringstream out;
  out << "estimator,alpha,beta,component,d_true,mean,st_d,mse,used,failed\n";
  for (const auto& r : table.rows) {
    out << r.tag << ',' << format_double(r.alpha) << ',' << (std::isnan(r.beta) ? std::string() : format_double(r.beta))
        << ',' << r.component << ',' << format_double(r.d_true) << ',' << format_double(r.mean) << ','
        << format_double(r.st_d) << ',' << format_double(r.mse) << ',' << r.used << ',' << r.failed << '\n';
  }
  return out.str();
}

}  // namespace longmem
