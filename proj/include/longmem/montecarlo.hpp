#pragma once

#include "longmem/gse.hpp"
#include "longmem/varfima.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace longmem {

struct EstimatorSpec {
  SpectralKind kind = SpectralKind::raw;
  double alpha = 0.85;
  double beta = 0.9;       // smoothed only
  bool skip_pole = false;  // smoothed only

  // LOB, SLOB (k != -j restriction), SLOB* (no restriction) or TLOB.
  std::string tag() const;
};

struct McDesign {
  VarfimaSpec spec;  // seed is replaced per replication
  std::vector<EstimatorSpec> estimators;
  int replications = 200;
  std::uint64_t base_seed = 1;
  int threads = 0;  // 0: OpenMP default
  OptimizerOptions optimizer;

  void validate() const;
};

struct Summary {
  double mean = 0.0;
  double st_d = 0.0;  // divisor R - 1
  double mse = 0.0;   // divisor R, about d_true
};

// Throws ArgumentError for fewer than two values.
Summary summarize(std::span<const double> values, double d_true);

struct McRow {
  std::string tag;
  double alpha = 0.0;
  double beta = 0.0;  // NaN unless smoothed
  int component = 0;  // 1-based
  double d_true = 0.0;
  double mean = 0.0;
  double st_d = 0.0;
  double mse = 0.0;
  int used = 0;
  int failed = 0;
};

struct McTable {
  std::vector<McRow> rows;
  // estimates[e] is replications x q; failed replications hold NaN.
  std::vector<Eigen::MatrixXd> estimates;
  std::vector<EstimatorSpec> estimators;
  int replications = 0;
};

// Replications run in parallel; results are reduced by replication index, so
// the table is bit-identical for any thread count. Throws EstimationError when
// more than 5% of the replications of some estimator fail.
McTable run(const McDesign& design);

std::string to_csv(const McTable& table);

}  // namespace longmem
