#include "doctest.h"

#include "fixtures.hpp"
#include "longmem/errors.hpp"
#include "longmem/montecarlo.hpp"

#include <cmath>
#include <random>

using namespace longmem;

namespace {

McDesign small_design(double d1, double d2, int reps, std::uint64_t seed) {
  McDesign design;
  design.spec = VarfimaSpec::bivariate(d1, d2, 0.0, 400, 2000, 0);
  design.replications = reps;
  design.base_seed = seed;
  EstimatorSpec raw;
  EstimatorSpec smooth;
  smooth.kind = SpectralKind::smoothed;
  EstimatorSpec taper;
  taper.kind = SpectralKind::tapered;
  design.estimators = {raw, smooth, taper};
  return design;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("summarize") {
  const std::vector<double> same{0.3, 0.3, 0.3};
  const Summary a = summarize(same, 0.3);
  CHECK(a.mean == doctest::Approx(0.3));
  CHECK(a.st_d == doctest::Approx(0.0));
  CHECK(a.mse == doctest::Approx(0.0));

  const std::vector<double> two{0.2, 0.4};
  const Summary b = summarize(two, 0.3);
  CHECK(b.mean == doctest::Approx(0.3));
  CHECK(b.st_d == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
  CHECK(b.mse == doctest::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(summarize(std::vector<double>{0.1}, 0.0), ArgumentError);

  SUBCASE("mse decomposition on random vectors") {
    std::mt19937 gen(4);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v(2 + trial * 7);
      for (auto& x : v) x = u(gen);
      const double truth = u(gen);
      const Summary s = summarize(v, truth);
      const double R = double(v.size());
      CHECK(std::abs(s.mse - (s.st_d * s.st_d * (R - 1) / R + std::pow(s.mean - truth, 2))) < 1e-12);
    }
  }
}

TEST_CASE("estimator tags") {
  EstimatorSpec e;
  CHECK(e.tag() == "LOB");
  e.kind = SpectralKind::smoothed;
  CHECK(e.tag() == "SLOB*");
  e.skip_pole = true;
  CHECK(e.tag() == "SLOB");
  e.kind = SpectralKind::tapered;
  CHECK(e.tag() == "TLOB");
}

TEST_CASE("design validation") {
  McDesign d = small_design(0.1, 0.2, 10, 1);
  CHECK_NOTHROW(d.validate());
  d.replications = 0;
  CHECK_THROWS_AS(d.validate(), ArgumentError);
  d = small_design(0.1, 0.2, 10, 1);
  d.estimators[0].alpha = 1.2;
  CHECK_THROWS_AS(d.validate(), ArgumentError);
  d = small_design(0.1, 0.2, 10, 1);
  d.estimators.clear();
  CHECK_THROWS_AS(d.validate(), ArgumentError);
}

TEST_CASE("run") {
  SUBCASE("table shape and identities") {
    const McTable t = run(small_design(0.2, 0.3, 12, 5));
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[0].tag == "LOB");
    CHECK(std::isnan(t.rows[0].beta));
    CHECK(t.rows[2].tag == "SLOB*");
    CHECK(t.rows[2].beta == doctest::Approx(0.9));
    CHECK(t.rows[5].component == 2);
    CHECK(t.rows[5].d_true == doctest::Approx(0.3));
    for (const auto& r : t.rows) {
      CHECK(r.used + r.failed == 12);
      const double R = r.used;
      CHECK(std::abs(r.mse - (r.st_d * r.st_d * (R - 1) / R + std::pow(r.mean - r.d_true, 2))) < 1e-12);
    }
    CHECK(t.estimates.size() == 3);
    CHECK(t.estimates[0].rows() == 12);
  }
  SUBCASE("bit-identical across worker counts") {
    McDesign one = small_design(0.2, 0.3, 8, 9);
    one.threads = 1;
    McDesign many = one;
    many.threads = 4;
    const McTable a = run(one);
    const McTable b = run(many);
    for (std::size_t e = 0; e < a.estimates.size(); ++e) CHECK(a.estimates[e] == b.estimates[e]);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_csv(a) == to_csv(run(one)));
  }
  SUBCASE("white-noise null") {
    McDesign d = small_design(0.0, 0.0, 50, 11);
    d.spec.n = 1000;
    d.spec.truncation = 0;
    const McTable t = run(d);
    for (const auto& r : t.rows) {
      CAPTURE(r.tag);
      CHECK(std::abs(r.mean) < 0.02);
    }
  }
  SUBCASE("disjoint seeds agree within sampling error") {
    const McTable a = run(small_design(0.2, 0.3, 40, 100));
    const McTable b = run(small_design(0.2, 0.3, 40, 200));
    for (std::size_t k = 0; k < a.rows.size(); ++k)
      CHECK(std::abs(a.rows[k].mean - b.rows[k].mean) < 4 * a.rows[k].st_d / std::sqrt(40.0));
  }
  SUBCASE("csv layout") {
    const std::string csv = to_csv(run(small_design(0.1, 0.1, 3, 2)));
    CHECK(csv.rfind("estimator,alpha,beta,component,d_true,mean,st_d,mse,used,failed\n", 0) == 0);
  }
}

}  // TEST_SUITE
