#include "longmem/cli.hpp"

#include "longmem/csv.hpp"
#include "longmem/errors.hpp"
#include "longmem/gse.hpp"
#include "longmem/inference.hpp"
#include "longmem/montecarlo.hpp"
#include "longmem/plotdata.hpp"
#include "longmem/varfima.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace longmem::cli {
namespace {

using Json = nlohmann::ordered_json;
constexpr const char* kSchema = "longmem/1";

// ---------------------------------------------------------------------------
// Small parsers

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InputError(what + ": '" + cell + "' is not a number");
    }
  }
  if (out.empty()) throw InputError(what + " is empty");
  return out;
}

// Row-major literal "a,b;c,d".
Eigen::MatrixXd parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(row, "--R row"));
  if (rows.empty()) throw InputError("--R is empty");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw InputError("--R rows differ in length");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

Eigen::VectorXd broadcast(const std::vector<double>& v, Eigen::Index q, const std::string& what) {
  if (v.size() == 1) return Eigen::VectorXd::Constant(q, v.front());
  if (static_cast<Eigen::Index>(v.size()) != q)
    throw InputError(what + " needs 1 or " + std::to_string(q) + " values");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), q);
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError("report field '" + what + "' is not a matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.front().size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j.front().size()) throw InputError("report field '" + what + "' is ragged");
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError("report field '" + what + "' is not a vector");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  return v;
}

// Flat key=value file; '#' starts a comment line.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config entry without '='", line_no);
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = strip(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out[key] = strip(line.substr(eq + 1));
  }
  return out;
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

// Output sink: --output path or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

// ---------------------------------------------------------------------------
// Option sets

struct EstimateOptions {
  std::string input, output, estimator = "raw", taper = "cosine-bell", theta_min, theta_max;
  double alpha = 0.85, beta = 0.9, restricted_beta = 0.0;
  long ell = 0, m = 0;
  bool skip_pole = false, no_demean = false, raw_weights = false;
};

struct TestOptions {
  std::string input, output, R, nu;
  bool common_d = false, i0 = false;
};

struct SimulateOptions {
  std::string output, d, rho = "0";
  long n = 1000, truncation = 50000;
  std::uint64_t seed = 1;
};

struct MonteCarloOptions {
  std::string output, json, estimates, d, rho = "0", estimator = "raw,smoothed,tapered";
  long n = 1000, truncation = 10000;
  int replications = 200;
  std::uint64_t seed = 1;
  double alpha = 0.85, beta = 0.9;
  bool skip_pole = false, full_scale = false;
};

struct TransformOptions {
  std::string input, output, mode = "squared_log_return";
};

struct PlotOptions {
  std::string input, output;
};

Eigen::MatrixXd correlation(Eigen::Index q, const std::string& rho_text) {
  const std::vector<double> rho = parse_list(rho_text, "--rho");
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(q, q);
  if (rho.size() == 1) {
    for (Eigen::Index r = 0; r < q; ++r)
      for (Eigen::Index s = 0; s < q; ++s)
        if (r != s) c(r, s) = rho.front();
    return c;
  }
  // Upper triangle, row by row.
  if (static_cast<Eigen::Index>(rho.size()) != q * (q - 1) / 2)
    throw InputError("--rho needs 1 or q(q-1)/2 values");
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < q; ++r)
    for (Eigen::Index s = r + 1; s < q; ++s) c(r, s) = c(s, r) = rho[k++];
  return c;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_estimate(const EstimateOptions& o, std::ostream& out) {
  const CsvTable csv = read_csv_file(o.input);
  const Eigen::Index n = csv.values.rows();
  const Eigen::Index q = csv.values.cols();
  if (n < 2) throw InputError("need at least two observations");

  EstimateConfig config;
  config.kind = parse_spectral_kind(o.estimator);
  config.alpha = o.alpha;
  config.beta = o.beta;
  config.ell = o.ell;
  config.m = o.m;
  config.skip_pole = o.skip_pole;
  config.normalize_weights = !o.raw_weights;
  config.spectral.demean = !o.no_demean;
  if (config.kind == SpectralKind::tapered && o.taper != "cosine-bell")
    throw InputError("unknown taper '" + o.taper + "'");
  const long m = resolve_m(config, n);
  if (n < 2 * m)
    throw InputError("sample size n=" + std::to_string(n) + " is below 2m=" + std::to_string(2 * m));
  config.space = o.restricted_beta > 0.0 ? ParamSpace::omega_beta(q, o.restricted_beta) : ParamSpace::standard(q);
  if (!o.theta_min.empty()) config.space.lower = broadcast(parse_list(o.theta_min, "--theta-min"), q, "--theta-min");
  if (!o.theta_max.empty()) config.space.upper = broadcast(parse_list(o.theta_max, "--theta-max"), q, "--theta-max");

  Json cfg;
  cfg["command"] = "estimate";
  cfg["input"] = o.input;
  cfg["estimator"] = to_string(config.kind);
  cfg["alpha"] = config.alpha;
  cfg["m"] = m;
  if (config.kind == SpectralKind::smoothed) {
    cfg["beta"] = config.beta;
    cfg["ell"] = resolve_ell(config, n);
    cfg["skip_pole"] = config.skip_pole;
    cfg["normalize_weights"] = config.normalize_weights;
  }
  if (config.kind == SpectralKind::tapered) cfg["taper"] = o.taper;
  cfg["demean"] = config.spectral.demean;
  cfg["theta_min"] = to_vector(config.space.lower);
  cfg["theta_max"] = to_vector(config.space.upper);

  const GseFit fit = estimate(MultiSeries(csv.values), config);
  const Eigen::MatrixXd g_corr = corrected_g(fit.d_hat, fit.g_hat);
  const AsymptoticCov cov = omega(fit.d_hat, g_corr);
  Eigen::VectorXd se(q);
  for (Eigen::Index k = 0; k < q; ++k) se[k] = std::sqrt(std::max(0.0, cov.Omega(k, k)) / static_cast<double>(fit.m));

  Json report;
  report["schema"] = kSchema;
  report["config"] = cfg;
  report["n"] = n;
  report["q"] = q;
  report["components"] = csv.header;
  report["m"] = fit.m;
  report["d_hat"] = to_vector(fit.d_hat);
  report["std_error"] = to_vector(se);
  report["g_hat"] = to_json(fit.g_hat);
  report["g_corrected"] = to_json(g_corr);
  report["omega"] = to_json(cov.Omega);
  report["objective"] = fit.objective;
  report["converged"] = fit.converged;
  report["at_boundary"] = fit.at_boundary;
  report["iterations"] = fit.iterations;
  out << report.dump(2) << '\n';
  return kSuccess;
}

int cmd_test(const TestOptions& o, std::ostream& out) {
  std::ifstream in(o.input);
  if (!in) throw InputError("cannot open '" + o.input + "'");
  Json fit;
  try {
    fit = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("fit report is not valid JSON: ") + e.what());
  }
  if (!fit.contains("schema") || fit["schema"] != kSchema) throw InputError("fit report has an unknown schema");
  for (const char* key : {"d_hat", "omega", "m"})
    if (!fit.contains(key)) throw InputError(std::string("fit report lacks '") + key + "'");
  const Eigen::VectorXd d_hat = vector_from_json(fit["d_hat"], "d_hat");
  const Eigen::MatrixXd omega_hat = matrix_from_json(fit["omega"], "omega");
  const long m = fit["m"].get<long>();
  const Eigen::Index q = d_hat.size();

  const int modes = int(o.common_d) + int(o.i0) + int(!o.R.empty());
  if (modes != 1) throw InputError("choose exactly one of --common-d, --i0 or --R");
  Eigen::MatrixXd R;
  std::string design;
  if (o.common_d) {
    R = common_d_restriction(q);
    design = "common-d";
  } else if (o.i0) {
    R = i0_restriction(q);
    design = "i0";
  } else {
    R = parse_matrix(o.R);
    design = "custom";
  }
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(R.rows());
  if (!o.nu.empty()) nu = broadcast(parse_list(o.nu, "--nu"), R.rows(), "--nu");

  const WaldTest t = wald_test(R, nu, d_hat, omega_hat, m);
  Json cfg;
  cfg["command"] = "test";
  cfg["input"] = o.input;
  cfg["design"] = design;
  cfg["R"] = to_json(R);
  cfg["nu"] = to_vector(nu);
  Json report;
  report["schema"] = kSchema;
  report["config"] = cfg;
  report["T"] = t.T;
  report["dof"] = t.dof;
  report["p_value"] = t.p_value;
  report["reject_5pct"] = t.p_value < 0.05;
  out << report.dump(2) << '\n';
  return kSuccess;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const std::vector<double> d = parse_list(o.d, "--d");
  VarfimaSpec spec;
  spec.d = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
  spec.innovation_corr = correlation(spec.d.size(), o.rho);
  spec.n = o.n;
  spec.truncation = o.truncation;
  spec.seed = o.seed;
  const MultiSeries x = simulate(spec);

  Json cfg;
  cfg["command"] = "simulate";
  cfg["d"] = d;
  cfg["rho"] = o.rho;
  cfg["n"] = o.n;
  cfg["truncation"] = o.truncation;
  cfg["seed"] = o.seed;
  std::vector<std::string> header;
  for (Eigen::Index i = 0; i < x.q(); ++i) header.push_back("x" + std::to_string(i + 1));
  std::vector<std::string> comments{"config " + cfg.dump()};
  write_csv(out, header, x.values(), comments);
  return kSuccess;
}

int cmd_montecarlo(const MonteCarloOptions& o, std::ostream& out) {
  const std::vector<double> d = parse_list(o.d, "--d");
  McDesign design;
  design.spec.d = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
  design.spec.innovation_corr = correlation(design.spec.d.size(), o.rho);
  design.spec.n = o.n;
  design.spec.truncation = o.full_scale ? 50000 : o.truncation;
  design.replications = o.full_scale ? 1000 : o.replications;
  design.base_seed = o.seed;
  if (const char* env = std::getenv("LONGMEM_THREADS")) {
    try {
      design.threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw InputError(std::string("LONGMEM_THREADS='") + env + "' is not an integer");
    }
  }
  std::stringstream kinds(o.estimator);
  std::string kind;
  while (std::getline(kinds, kind, ',')) {
    EstimatorSpec e;
    e.kind = parse_spectral_kind(kind);
    e.alpha = o.alpha;
    e.beta = o.beta;
    e.skip_pole = o.skip_pole;
    design.estimators.push_back(e);
  }

  Json cfg;
  cfg["command"] = "montecarlo";
  cfg["d"] = d;
  cfg["rho"] = o.rho;
  cfg["n"] = design.spec.n;
  cfg["truncation"] = design.spec.truncation;
  cfg["replications"] = design.replications;
  cfg["seed"] = design.base_seed;
  cfg["estimators"] = o.estimator;
  cfg["alpha"] = o.alpha;
  cfg["beta"] = o.beta;
  cfg["skip_pole"] = o.skip_pole;

  const McTable table = run(design);
  {
    Sink sink(o.output, out);
    sink.stream() << "# config " << cfg.dump() << '\n' << to_csv(table);
  }
  if (!o.json.empty()) {
    Json j;
    j["schema"] = kSchema;
    j["config"] = cfg;
    j["rows"] = Json::array();
    for (const auto& r : table.rows) {
      j["rows"].push_back({{"estimator", r.tag},
                           {"alpha", r.alpha},
                           {"beta", std::isnan(r.beta) ? Json(nullptr) : Json(r.beta)},
                           {"component", r.component},
                           {"d_true", r.d_true},
                           {"mean", r.mean},
                           {"st_d", r.st_d},
                           {"mse", r.mse},
                           {"used", r.used},
                           {"failed", r.failed}});
    }
    Sink sink(o.json, out);
    sink.stream() << j.dump(2) << '\n';
  }
  if (!o.estimates.empty()) {
    // One file per estimator: <prefix>_<tag>.csv, failed replications omitted.
    for (std::size_t e = 0; e < table.estimators.size(); ++e) {
      std::string tag = table.estimators[e].tag();
      if (!tag.empty() && tag.back() == '*') tag = tag.substr(0, tag.size() - 1) + "star";
      const Eigen::MatrixXd& est = table.estimates[e];
      std::vector<Eigen::Index> keep;
      for (Eigen::Index r = 0; r < est.rows(); ++r)
        if (est.row(r).allFinite()) keep.push_back(r);
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(keep.size()), est.cols());
      for (std::size_t k = 0; k < keep.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = est.row(keep[k]);
      std::vector<std::string> header;
      for (Eigen::Index i = 0; i < est.cols(); ++i) header.push_back("d" + std::to_string(i + 1));
      Sink sink(o.estimates + "_" + tag + ".csv", out);
      write_csv(sink.stream(), header, rows, {"config " + cfg.dump()});
    }
  }
  return kSuccess;
}

int cmd_transform(const TransformOptions& o, std::ostream& out) {
  TransformMode mode;
  if (o.mode == "log_return") mode = TransformMode::log_return;
  else if (o.mode == "squared_log_return") mode = TransformMode::squared_log_return;
  else throw InputError("unknown transform mode '" + o.mode + "'");
  const CsvTable csv = read_csv_file(o.input);
  const Eigen::MatrixXd y = transform(csv.values, mode);
  Json cfg;
  cfg["command"] = "transform";
  cfg["input"] = o.input;
  cfg["mode"] = o.mode;
  write_csv(out, csv.header, y, {"config " + cfg.dump()});
  return kSuccess;
}

int cmd_plotdata(const PlotOptions& o, std::ostream& out) {
  const CsvTable csv = read_csv_file(o.input);
  Json j = plot_data(csv.values, csv.header);
  Json cfg;
  cfg["command"] = "plotdata";
  cfg["input"] = o.input;
  Json report;
  report["schema"] = kSchema;
  report["config"] = cfg;
  for (auto& [k, v] : j.items())
    if (k != "schema") report[k] = v;
  out << report.dump(2) << '\n';
  return kSuccess;
}

const std::set<std::string> kFlags{"skip-pole", "no-demean", "raw-weights", "common-d", "i0", "full-scale"};

// Appends config-file entries the command line did not set.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
  std::string path;
  std::vector<std::string> kept;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      kept.push_back(args[k]);
    }
  }
  if (path.empty() || kept.empty()) return kept;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(kept.front());
  } catch (const CLI::OptionNotFound&) {
    return kept;
  }
  std::set<std::string> given;
  for (const auto& a : kept)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  for (const auto& [key, value] : read_config(path)) {
    if (given.count(key) || sub->get_option_no_throw("--" + key) == nullptr) continue;
    if (kFlags.count(key)) {
      if (truthy(value)) kept.push_back("--" + key);
    } else {
      kept.push_back("--" + key);
      kept.push_back(value);
    }
  }
  return kept;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian semiparametric estimation of multivariate long memory"};
  app.require_subcommand(1);

  EstimateOptions est;
  auto* e = app.add_subcommand("estimate", "Estimate d from a CSV series");
  e->add_option("--input", est.input, "CSV file, one column per component")->required();
  e->add_option("--output", est.output, "JSON report path (default stdout)");
  e->add_option("--estimator", est.estimator, "raw, smoothed or tapered")->capture_default_str();
  e->add_option("--alpha", est.alpha, "m = floor(n^alpha)")->capture_default_str();
  e->add_option("--m", est.m, "explicit m (overrides --alpha)");
  e->add_option("--beta", est.beta, "ell = floor(n^beta) for the smoothed estimator")->capture_default_str();
  e->add_option("--ell", est.ell, "explicit ell (overrides --beta)");
  e->add_flag("--skip-pole", est.skip_pole, "omit the k = -j term of the smoother");
  e->add_flag("--raw-weights", est.raw_weights, "do not normalize the Bartlett weights");
  e->add_flag("--no-demean", est.no_demean, "use the series without mean removal");
  e->add_option("--taper", est.taper, "taper for the tapered estimator")->capture_default_str();
  e->add_option("--theta-min", est.theta_min, "lower bounds, one value or one per component");
  e->add_option("--theta-max", est.theta_max, "upper bounds, one value or one per component");
  e->add_option("--restricted-beta", est.restricted_beta, "optimize over [-beta/2, 0]^q");

  TestOptions tst;
  auto* t = app.add_subcommand("test", "Wald test on a fit report");
  t->add_option("--input", tst.input, "JSON report from 'estimate'")->required();
  t->add_option("--output", tst.output, "JSON report path (default stdout)");
  t->add_flag("--common-d", tst.common_d, "H0: all components share d");
  t->add_flag("--i0", tst.i0, "H0: d = 0");
  t->add_option("--R", tst.R, "restriction matrix, rows separated by ';'");
  t->add_option("--nu", tst.nu, "right-hand side (default zeros)");

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Simulate a Gaussian VARFIMA(0,d,0) series");
  s->add_option("--d", sim.d, "comma separated d")->required();
  s->add_option("--rho", sim.rho, "innovation correlation")->capture_default_str();
  s->add_option("--n", sim.n, "sample size")->capture_default_str();
  s->add_option("--truncation", sim.truncation, "MA truncation point")->capture_default_str();
  s->add_option("--seed", sim.seed, "seed")->capture_default_str();
  s->add_option("--output", sim.output, "CSV path (default stdout)");

  MonteCarloOptions mc;
  auto* c = app.add_subcommand("montecarlo", "Replicated simulate/estimate experiment");
  c->add_option("--d", mc.d, "comma separated d")->required();
  c->add_option("--rho", mc.rho, "innovation correlation")->capture_default_str();
  c->add_option("--n", mc.n, "sample size")->capture_default_str();
  c->add_option("--truncation", mc.truncation, "MA truncation point")->capture_default_str();
  c->add_option("--replications", mc.replications, "replications")->capture_default_str();
  c->add_option("--seed", mc.seed, "base seed")->capture_default_str();
  c->add_option("--estimator", mc.estimator, "comma separated estimator kinds")->capture_default_str();
  c->add_option("--alpha", mc.alpha, "m = floor(n^alpha)")->capture_default_str();
  c->add_option("--beta", mc.beta, "ell = floor(n^beta)")->capture_default_str();
  c->add_flag("--skip-pole", mc.skip_pole, "omit the k = -j term of the smoother");
  c->add_flag("--full-scale", mc.full_scale, "1000 replications, truncation 50000");
  c->add_option("--output", mc.output, "table CSV path (default stdout)");
  c->add_option("--json", mc.json, "table JSON path");
  c->add_option("--estimates", mc.estimates, "prefix for per-replication estimate CSVs");

  TransformOptions tr;
  auto* x = app.add_subcommand("transform", "Log returns or squared log returns");
  x->add_option("--input", tr.input, "CSV of positive prices")->required();
  x->add_option("--mode", tr.mode, "log_return or squared_log_return")->capture_default_str();
  x->add_option("--output", tr.output, "CSV path (default stdout)");

  PlotOptions pl;
  auto* p = app.add_subcommand("plotdata", "Histogram, kernel density and scatter data for estimates");
  p->add_option("--input", pl.input, "CSV of estimates, one column per component")->required();
  p->add_option("--output", pl.output, "JSON path (default stdout)");

  try {
    std::vector<std::string> args = merge_config(raw_args, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kInputError;
  } catch (const InputError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kInputError;
  }

  try {
    if (e->parsed()) {
      Sink sink(est.output, out);
      return cmd_estimate(est, sink.stream());
    }
    if (t->parsed()) {
      Sink sink(tst.output, out);
      return cmd_test(tst, sink.stream());
    }
    if (s->parsed()) {
      Sink sink(sim.output, out);
      return cmd_simulate(sim, sink.stream());
    }
    if (c->parsed()) return cmd_montecarlo(mc, out);
    if (x->parsed()) {
      Sink sink(tr.output, out);
      return cmd_transform(tr, sink.stream());
    }
    if (p->parsed()) {
      Sink sink(pl.output, out);
      return cmd_plotdata(pl, sink.stream());
    }
  } catch (const InputError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kInputError;
  } catch (const ArgumentError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kInputError;
  } catch (const EstimationError& ex) {
    err << "estimation failed: " << ex.what() << '\n';
    return kEstimationError;
  } catch (const NumericalError& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kNumericalError;
  }
  return kInputError;
}

}  // namespace longmem::cli
