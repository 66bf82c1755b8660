#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "longmem/errors.hpp"
#include "longmem/gse.hpp"
#include "longmem/optimize.hpp"
#include "longmem/varfima.hpp"

#include <array>
#include <cmath>

using namespace longmem;
using fixtures::kPi;

namespace {

SpectralEstimate raw_estimate(const Eigen::MatrixXd& x, long m) {
  return periodogram(MultiSeries(x), FrequencyGrid::fourier(x.rows(), m));
}

Eigen::VectorXd central_score(const GseObjective& obj, const Eigen::VectorXd& d, double h) {
  Eigen::VectorXd g(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    Eigen::VectorXd a = d, b = d;
    a[k] += h;
    b[k] -= h;
    g[k] = (obj.value(a) - obj.value(b)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_SUITE("gse") {

TEST_CASE("bandwidth and parameter boxes") {
  CHECK(bandwidth(1000, 0.85) == 354);
  CHECK(bandwidth(1000, 0.9) == 501);
  CHECK(bandwidth(1000, 0.7) == 125);
  const auto s = ParamSpace::standard(3);
  CHECK(s.lower.isApprox(Eigen::VectorXd::Constant(3, -0.499)));
  CHECK_NOTHROW(s.validate());
  const auto o = ParamSpace::omega_beta(2, 0.9);
  CHECK(o.lower[0] == doctest::Approx(-0.45));
  CHECK(o.upper[1] == 0.0);
  CHECK(ParamSpace::omega_beta(1, 1.0).lower[0] == doctest::Approx(-0.499));
  ParamSpace bad{Eigen::VectorXd::Constant(1, 0.2), Eigen::VectorXd::Constant(1, 0.1)};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  ParamSpace wide{Eigen::VectorXd::Constant(1, -0.6), Eigen::VectorXd::Constant(1, 0.1)};
  CHECK_THROWS_AS(wide.validate(), ArgumentError);
}

TEST_CASE("G hat") {
  const long n = 256, m = 40;
  const auto est = raw_estimate(fixtures::ar1(n, 2, 0.4, 3), m);
  SUBCASE("d = 0 averages the real parts") {
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2, 2);
    for (long j = 0; j < m; ++j) expect += est.at(std::size_t(j)).real();
    expect /= double(m);
    CHECK((g_hat(Eigen::VectorXd::Zero(2), est, m) - expect).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("scalar loop") {
    const auto e1 = raw_estimate(fixtures::ar1(n, 1, 0.4, 4), m);
    const double d = 0.27;
    double s = 0.0;
    for (long j = 1; j <= m; ++j) s += std::pow(2 * kPi * j / n, 2 * d) * e1.at(std::size_t(j - 1))(0, 0).real();
    s /= m;
    CHECK(g_hat(Eigen::VectorXd::Constant(1, d), e1, m)(0, 0) == doctest::Approx(s).epsilon(1e-12));
  }
  SUBCASE("linear in the spectral estimate and exactly symmetric") {
    const Eigen::Vector2d d(0.1, -0.2);
    const Eigen::MatrixXd g = g_hat(d, est, m);
    CHECK(g(0, 1) == g(1, 0));
    CHECK((g_hat(d, est.scaled(3.5), m) - 3.5 * g).cwiseAbs().maxCoeff() <= 1e-14 * g.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("objective") {
  SUBCASE("flat scalar spectrum gives log c at d = 0") {
    const FrequencyGrid grid = FrequencyGrid::fourier(100, 20);
    const SpectralEstimate flat(grid, std::vector<Eigen::MatrixXcd>(20, Eigen::MatrixXcd::Constant(1, 1, 2.5)),
                                SpectralKind::raw);
    CHECK(objective(Eigen::VectorXd::Zero(1), flat, 20) == doctest::Approx(std::log(2.5)).epsilon(1e-14));
    CHECK(std::abs(score(Eigen::VectorXd::Zero(1), flat, 20)[0]) < 1e-13);
  }
  SUBCASE("explicit 2x2 determinant at d = 0") {
    const long n = 128, m = 16;
    const Eigen::MatrixXd x = fixtures::white_noise(n, 2, 77);
    const Eigen::MatrixXd xc = fixtures::demeaned(x);
    double a = 0, b = 0, c = 0;
    for (long j = 1; j <= m; ++j) {
      const Eigen::VectorXcd w = fixtures::brute_dft(xc, 2 * kPi * j / n);
      a += std::norm(w[0]);
      c += std::norm(w[1]);
      b += (w[0] * std::conj(w[1])).real();
    }
    a /= m, b /= m, c /= m;
    CHECK(objective(Eigen::VectorXd::Zero(2), raw_estimate(x, m), m) == doctest::Approx(std::log(a * c - b * b)).epsilon(1e-12));
  }
  SUBCASE("difference identity") {
    const long m = 30;
    const auto est = raw_estimate(fixtures::ar1(200, 2, 0.3, 5), m);
    const GseObjective obj(est, m);
    const Eigen::Vector2d d(0.15, -0.05);
    const double via_logdet = std::log(obj.g_hat(d).determinant()) - std::log(obj.g_hat(Eigen::Vector2d::Zero()).determinant()) -
                              2 * d.sum() * obj.mean_log_lambda();
    CHECK(obj.value(d) - obj.value(Eigen::Vector2d::Zero()) == doctest::Approx(via_logdet).epsilon(1e-10));
  }
  SUBCASE("singular G gives +inf") {
    Eigen::MatrixXd x(64, 2);
    const Eigen::MatrixXd z = fixtures::white_noise(64, 1, 9);
    x << z, 2.0 * z;
    const auto est = raw_estimate(x, 10);
    CHECK(std::isinf(objective(Eigen::Vector2d(0.1, 0.1), est, 10)));
    CHECK_THROWS_AS(score(Eigen::Vector2d(0.1, 0.1), est, 10), NumericalError);
    // A constant series has a zero periodogram once demeaned.
    CHECK_THROWS_AS(estimate(MultiSeries(Eigen::MatrixXd::Constant(200, 2, 1.5)), EstimateConfig{}), EstimationError);
  }
}

TEST_CASE("score and hessian against central differences") {
  const std::array<unsigned, 3> seeds{101, 202, 303};
  const std::array<Eigen::Vector2d, 3> points{Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(-0.3, 0.05),
                                              Eigen::Vector2d(0.35, -0.15)};
  for (std::size_t f = 0; f < seeds.size(); ++f) {
    CAPTURE(f);
    const long n = 512, m = 80;
    const auto est = raw_estimate(fixtures::ar1(n, 2, 0.5, seeds[f]), m);
    const GseObjective obj(est, m);
    const Eigen::VectorXd d = points[f];
    const double h = 1e-6;
    const Eigen::VectorXd s = obj.score(d);
    const Eigen::VectorXd fd = central_score(obj, d, h);
    CHECK((s - fd).cwiseAbs().maxCoeff() < 1e-5);

    const Eigen::MatrixXd H = obj.hessian(d);
    CHECK(std::abs(H(0, 1) - H(1, 0)) < 1e-9);
    for (Eigen::Index k = 0; k < 2; ++k) {
      Eigen::VectorXd a = d, b = d;
      a[k] += h;
      b[k] -= h;
      const Eigen::VectorXd col = (obj.score(a) - obj.score(b)) / (2 * h);
      CHECK((H.col(k) - col).cwiseAbs().maxCoeff() < 1e-4);
    }
  }
  SUBCASE("scalar second derivative") {
    const long m = 60;
    const auto est = raw_estimate(fixtures::ar1(400, 1, 0.3, 9), m);
    const GseObjective obj(est, m);
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(1, 0.12);
    const double h = 1e-4;
    Eigen::VectorXd a = d, b = d;
    a[0] += h;
    b[0] -= h;
    const double fd2 = (obj.value(a) - 2 * obj.value(d) + obj.value(b)) / (h * h);
    CHECK(obj.hessian(d)(0, 0) == doctest::Approx(fd2).epsilon(1e-5));
  }
  SUBCASE("relabeling permutes the score") {
    const Eigen::MatrixXd x = fixtures::ar1(300, 2, 0.4, 13);
    Eigen::MatrixXd swapped(300, 2);
    swapped << x.col(1), x.col(0);
    const long m = 50;
    const Eigen::VectorXd s = score(Eigen::Vector2d(0.1, 0.3), raw_estimate(x, m), m);
    const Eigen::VectorXd t = score(Eigen::Vector2d(0.3, 0.1), raw_estimate(swapped, m), m);
    CHECK(std::abs(s[0] - t[1]) < 1e-12);
    CHECK(std::abs(s[1] - t[0]) < 1e-12);
  }
}

TEST_CASE("model spectrum") {
  const Eigen::Matrix2d G = (Eigen::Matrix2d() << 1.0, 0.3, 0.3, 2.0).finished();
  CHECK((model_spectrum(Eigen::Vector2d::Zero(), G, 1.0).real() - G).cwiseAbs().maxCoeff() == 0.0);
  SUBCASE("hand computation at d = (0.2, 0.3), lambda = pi/4") {
    const double lam = kPi / 4;
    const Eigen::MatrixXcd f = model_spectrum(Eigen::Vector2d(0.2, 0.3), Eigen::Matrix2d::Identity(), lam);
    const std::complex<double> l1 = std::pow(lam, -0.2) * std::exp(std::complex<double>(0, (kPi - lam) * 0.2 / 2));
    const std::complex<double> l2 = std::pow(lam, -0.3) * std::exp(std::complex<double>(0, (kPi - lam) * 0.3 / 2));
    CHECK(std::abs(f(0, 0) - std::norm(l1)) < 1e-14);
    CHECK(std::abs(f(1, 1) - std::norm(l2)) < 1e-14);
    CHECK(std::abs(f(0, 1)) < 1e-15);
    const Eigen::MatrixXcd g = model_spectrum(Eigen::Vector2d(0.2, 0.3), G, lam);
    CHECK(std::abs(g(0, 1) - l1 * 0.3 * std::conj(l2)) < 1e-14);
    CHECK(std::abs(g(0, 1) - std::conj(g(1, 0))) < 1e-15);
  }
  SUBCASE("scalar modulus") {
    const double lam = 0.4;
    const Eigen::MatrixXcd f = model_spectrum(Eigen::VectorXd::Constant(1, 0.35), Eigen::MatrixXd::Constant(1, 1, 1.7), lam);
    CHECK(std::abs(f(0, 0)) == doctest::Approx(std::pow(lam, -0.7) * 1.7).epsilon(1e-14));
  }
  CHECK_THROWS_AS(model_spectrum(Eigen::Vector2d(0.2, 0.0), G, 0.0), NumericalError);
}

TEST_CASE("optimizer") {
  SUBCASE("Nelder-Mead on a shifted quadratic inside the box") {
    auto f = [](const Eigen::VectorXd& x) { return std::pow(x[0] - 0.1, 2) + 3 * std::pow(x[1] + 0.2, 2); };
    const auto r = nelder_mead(f, Eigen::Vector2d(0.3, 0.3), Eigen::Vector2d::Constant(-0.5), Eigen::Vector2d::Constant(0.5));
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 0.1) < 1e-6);
    CHECK(std::abs(r.x[1] + 0.2) < 1e-6);
  }
  SUBCASE("box projection keeps the minimizer on the face") {
    auto f = [](const Eigen::VectorXd& x) { return std::pow(x[0] - 2.0, 2); };
    const auto r = nelder_mead(f, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, -1), Eigen::VectorXd::Constant(1, 1));
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("start grid") {
    const auto starts = start_points(ParamSpace::standard(2), 5);
    CHECK(starts.size() == 26);
    CHECK(starts.back().isZero());
    CHECK(start_points(ParamSpace::standard(5), 5).size() == 126);
    CHECK(start_points(ParamSpace::omega_beta(2, 0.9), 5).back().isZero());
  }
}

TEST_CASE("estimation invariants") {
  const long n = 1000;
  const MultiSeries x = simulate(VarfimaSpec::bivariate(0.2, 0.3, 0.4, n, 5000, 42));
  EstimateConfig cfg;
  const GseFit base = estimate(x, cfg);
  REQUIRE(base.converged);
  CHECK(base.m == 354);
  CHECK(ParamSpace::standard(2).contains(base.d_hat));
  CHECK(std::abs(base.g_hat(0, 1) - base.g_hat(1, 0)) < 1e-10);
  CHECK(base.g_hat.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0.0);
  CHECK(std::abs(base.d_hat[0] - 0.2) < 0.1);
  CHECK(std::abs(base.d_hat[1] - 0.3) < 0.1);

  SUBCASE("scale equivariance") {
    for (double c : {0.1, 10.0}) {
      const GseFit scaled = estimate(MultiSeries(c * x.values()), cfg);
      CHECK((scaled.d_hat - base.d_hat).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
  SUBCASE("permutation equivariance") {
    const std::array<int, 2> order{1, 0};
    const GseFit p = estimate(x.permuted(order), cfg);
    CHECK(std::abs(p.d_hat[0] - base.d_hat[1]) < 1e-6);
    CHECK(std::abs(p.d_hat[1] - base.d_hat[0]) < 1e-6);
  }
  SUBCASE("serial and parallel starts agree exactly") {
    EstimateConfig serial = cfg;
    serial.optimizer.exec = kernels::Exec::serial;
    serial.spectral.exec = kernels::Exec::serial;
    const GseFit s = estimate(x, serial);
    CHECK(s.d_hat == base.d_hat);
    CHECK(s.objective == base.objective);
  }
  SUBCASE("restricted box") {
    EstimateConfig r = cfg;
    r.space = ParamSpace::omega_beta(2, 0.9);
    const GseFit f = estimate(x, r);
    CHECK(r.space.contains(f.d_hat));
    CHECK(f.at_boundary);
  }
  SUBCASE("m must stay below n/2") {
    EstimateConfig big = cfg;
    big.m = 500;
    CHECK_THROWS_AS(estimate(x, big), ArgumentError);
  }
}

TEST_CASE("univariate collapse to local Whittle") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    const double d0 = -0.2 + 0.12 * seed;
    const MultiSeries x = simulate(VarfimaSpec::univariate(d0, 600, 3000, seed));
    EstimateConfig cfg;
    const GseFit fit = estimate(x, cfg);
    const double oracle = oracles::scalar_local_whittle(x.values().col(0), fit.m);
    CHECK(std::abs(fit.d_hat[0] - oracle) < 1e-6);
  }
}

}  // TEST_SUITE
