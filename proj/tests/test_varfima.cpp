#include "doctest.h"

#include "fixtures.hpp"
#include "longmem/errors.hpp"
#include "longmem/kernels.hpp"
#include "longmem/varfima.hpp"

#include <cmath>

using namespace longmem;
using fixtures::kPi;

namespace {

double lag1(const Eigen::VectorXd& x) {
  const Eigen::VectorXd c = x.array() - x.mean();
  return c.head(c.size() - 1).dot(c.tail(c.size() - 1)) / c.squaredNorm();
}

double corr(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd x = a.array() - a.mean();
  const Eigen::VectorXd y = b.array() - b.mean();
  return x.dot(y) / std::sqrt(x.squaredNorm() * y.squaredNorm());
}

}  // namespace

TEST_SUITE("varfima") {

TEST_CASE("fractional MA coefficients") {
  const auto zero = frac_ma_coeffs(0.0, 5);
  CHECK(zero == std::vector<double>{1, 0, 0, 0, 0, 0});
  for (double d : {-0.4, 0.13, 0.45}) CHECK(frac_ma_coeffs(d, 1)[1] == doctest::Approx(d).epsilon(1e-15));
  const auto p = frac_ma_coeffs(0.3, 10);
  CHECK(p[10] == doctest::Approx(std::exp(std::lgamma(10.3) - std::lgamma(11.0) - std::lgamma(0.3))).epsilon(1e-12));

  SUBCASE("log-gamma closed form up to k = 10^4") {
    for (double d : {-0.4, -0.1, 0.1, 0.3, 0.45}) {
      const auto psi = frac_ma_coeffs(d, 10000);
      double worst = 0.0;
      for (long k = 1; k <= 10000; ++k) {
        // Gamma(d) < 0 for d < 0; the sign is carried separately.
        const double sign = d < 0 ? -1.0 : 1.0;
        const double ref = sign * std::exp(std::lgamma(k + d) - std::lgamma(k + 1.0) - std::lgamma(d));
        worst = std::max(worst, std::abs(psi[std::size_t(k)] - ref) / std::abs(ref));
      }
      CAPTURE(d);
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("seeding") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(replication_seed(1, 0) != replication_seed(1, 1));
  CHECK(replication_seed(7, 3) == splitmix64(splitmix64(7) + 3));
}

TEST_CASE("Gaussian stream") {
  SUBCASE("deterministic") {
    const Eigen::MatrixXd L = correlation_factor(Eigen::Matrix2d::Identity());
    CHECK(gaussian_stream(99, 500, L) == gaussian_stream(99, 500, L));
    CHECK(gaussian_stream(99, 500, L) != gaussian_stream(100, 500, L));
  }
  SUBCASE("identity factor gives uncorrelated components") {
    const long count = 10000;
    const Eigen::MatrixXd z = gaussian_stream(5, count, correlation_factor(Eigen::Matrix2d::Identity()));
    CHECK(std::abs(corr(z.col(0), z.col(1))) < 3.0 / std::sqrt(double(count)));
    CHECK(std::abs(z.col(0).mean()) < 0.05);
    CHECK(std::abs(z.col(0).squaredNorm() / count - 1.0) < 0.05);
  }
  SUBCASE("rho = 0.8") {
    const Eigen::Matrix2d C = (Eigen::Matrix2d() << 1, 0.8, 0.8, 1).finished();
    const Eigen::MatrixXd z = gaussian_stream(6, 10000, correlation_factor(C));
    CHECK(std::abs(corr(z.col(0), z.col(1)) - 0.8) < 0.03);
  }
  CHECK_THROWS_AS(correlation_factor((Eigen::Matrix2d() << 1, 1.2, 1.2, 1).finished()), ArgumentError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(VarfimaSpec::univariate(0.5, 100, 10, 1).validate(), ArgumentError);
  CHECK_THROWS_AS(VarfimaSpec::bivariate(0.1, 0.2, 1.0, 100, 10, 1).validate(), ArgumentError);
  VarfimaSpec s = VarfimaSpec::bivariate(0.1, 0.2, 0.3, 100, 10, 1);
  s.innovation_corr(0, 0) = 2.0;
  CHECK_THROWS_AS(s.validate(), ArgumentError);
  CHECK_THROWS_AS(simulate(VarfimaSpec::univariate(0.1, 1, 10, 1)), ArgumentError);
}

TEST_CASE("moving-average filter") {
  SUBCASE("serial and parallel are bit-identical") {
    const auto psi = frac_ma_coeffs(0.3, 700);
    const Eigen::MatrixXd e = fixtures::white_noise(2700, 1, 4);
    const std::vector<double> eps(e.data(), e.data() + e.size());
    CHECK(kernels::ma_filter_serial(psi, eps) == kernels::ma_filter_parallel(psi, eps));
  }
  SUBCASE("matches the direct convolution") {
    const std::vector<double> psi{1.0, 0.5, 0.25};
    const std::vector<double> eps{1, 2, 3, 4, 5};
    const auto out = kernels::ma_filter_serial(psi, eps);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == doctest::Approx(3 + 0.5 * 2 + 0.25 * 1));
    CHECK(out[2] == doctest::Approx(5 + 0.5 * 4 + 0.25 * 3));
  }
}

TEST_CASE("simulated paths") {
  SUBCASE("deterministic across runs and execution modes") {
    const auto spec = VarfimaSpec::bivariate(0.2, 0.3, 0.5, 300, 2000, 17);
    const MultiSeries a = simulate(spec, kernels::Exec::parallel);
    const MultiSeries b = simulate(spec, kernels::Exec::serial);
    CHECK(a.values() == b.values());
    CHECK(a.values() == simulate(spec).values());
    CHECK(a.n() == 300);
    CHECK(a.q() == 2);
  }
  SUBCASE("d = 0 is white noise") {
    const long n = 5000;
    const MultiSeries x = simulate(VarfimaSpec::bivariate(0.0, 0.0, 0.7, n, 1000, 3));
    for (int i = 0; i < 2; ++i) CHECK(std::abs(lag1(x.values().col(i))) < 3.0 / std::sqrt(double(n)));
  }
  SUBCASE("ARFIMA lag-1 autocorrelation") {
    const MultiSeries x = simulate(VarfimaSpec::univariate(0.3, 5000, 10000, 8));
    CHECK(std::abs(lag1(x.values().col(0)) - 0.3 / 0.7) < 0.05);
  }
  SUBCASE("equal d keeps the innovation correlation") {
    const MultiSeries x = simulate(VarfimaSpec::bivariate(0.3, 0.3, 0.6, 5000, 10000, 9));
    CHECK(std::abs(corr(x.values().col(0), x.values().col(1)) - 0.6) < 0.05);
  }
  SUBCASE("marginal variance matches the truncated sum") {
    const long K = 10000;
    const auto psi = frac_ma_coeffs(0.3, K);
    double truncated = 0.0;
    for (double p : psi) truncated += p * p;
    const double full = std::tgamma(1 - 0.6) / std::pow(std::tgamma(1 - 0.3), 2);
    CHECK(std::abs(truncated / full - 1.0) < 0.02);
    // Average over independent paths: one long-memory path has a slowly
    // converging sample variance.
    double v = 0.0;
    const int paths = 40;
    for (int r = 0; r < paths; ++r) {
      const Eigen::VectorXd x = simulate(VarfimaSpec::univariate(0.3, 2000, K, 100 + r)).values().col(0);
      v += x.squaredNorm() / x.size();
    }
    CHECK(std::abs(v / paths / truncated - 1.0) < 0.05);
  }
  SUBCASE("periodogram slope near the origin") {
    const long n = 8192;
    const Eigen::VectorXd x = simulate(VarfimaSpec::univariate(0.4, n, 10000, 12)).values().col(0);
    const long m = long(std::floor(std::pow(double(n), 0.6)));
    const Eigen::VectorXd xc = x.array() - x.mean();
    Eigen::VectorXd lx(m), ly(m);
    for (long j = 1; j <= m; ++j) {
      const Eigen::VectorXcd w = fixtures::brute_dft(xc, 2 * kPi * j / n);
      lx[j - 1] = std::log(2 * kPi * j / n);
      ly[j - 1] = std::log(std::norm(w[0]));
    }
    const double mx = lx.mean(), my = ly.mean();
    const double slope = (lx.array() - mx).matrix().dot((ly.array() - my).matrix()) / (lx.array() - mx).matrix().squaredNorm();
    CHECK(std::abs(slope + 0.8) < 0.15);
  }
}

}  // TEST_SUITE
