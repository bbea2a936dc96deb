#include "doctest.h"
#include "oracles.hpp"
#include "polykernel/double_double.hpp"
#include "polykernel/quadrature.hpp"

using namespace polykernel;
using doctest::Approx;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const QuadratureRule r = gauss_legendre(10, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 19);
    CHECK(s == Approx(std::pow(2.0, 20) / 20).epsilon(1e-13));
  }

  TEST_CASE("Gauss-Kronrod panel and adaptive driver") {
    const std::function<double(double)> f = [](double x) { return std::exp(-x * x); };
    const PanelResult p = gauss_kronrod15(f, -1.0, 1.0);
    CHECK(p.value == Approx(std::sqrt(M_PI) * std::erf(1.0)).epsilon(1e-14));
    const std::function<double(double)> g = [](double x) { return std::sqrt(x); };
    CHECK(adaptive_gauss_kronrod(g, 0.0, 1.0, 1e-12, 0.0) == Approx(2.0 / 3.0).epsilon(1e-11));
  }

  TEST_CASE("radial log moment examples") {
    CHECK(radial_log_moment(WeightModel::ginibre(), 1.0, 3).log_value == Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(radial_log_moment(WeightModel::ginibre(), 50.0, 0).log_value == Approx(std::log(1.0 / 50)).epsilon(1e-14));
    // 2 int r e^{-10 r^4} dr = sqrt(pi / 10) / 2, confirmed by a trapezoid oracle
    const double trap = oracle::trapezoid_moment([](double r) { return std::pow(r, 4); }, 10.0, 0, 4.0, 1000000);
    CHECK(trap == Approx(std::sqrt(M_PI / 10) / 2).epsilon(1e-10));
    CHECK(radial_log_moment(WeightModel::power(2), 10.0, 0).log_value == Approx(std::log(std::sqrt(M_PI / 10) / 2)).epsilon(1e-13));
  }

  TEST_CASE("moments match a trapezoid oracle for every family") {
    for (const auto& w : {WeightModel::power(2), WeightModel::power(3), WeightModel::radial_poly({1.0, 0.5})}) {
      for (double m : {1.0, 7.5}) {
        for (int p : {0, 1, 5}) {
          const double trap = oracle::trapezoid_moment([&](double r) { return w.eval_radial(r); }, m, p, 6.0, 400000);
          CHECK(radial_log_moment(w, m, p).log_value == Approx(std::log(trap)).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("Ginibre moments are p! / m^(p+1) far into the tail") {
    for (double m : {1.0, 50.0, 200.0}) {
      for (int p = 0; p <= 200; p += 7) {
        const double exact = std::lgamma(p + 1.0) - (p + 1) * std::log(m);
        // relative error of M_p is the absolute error of its log
        CHECK(std::abs(radial_log_moment(WeightModel::ginibre(), m, p).log_value - exact) < 1e-12 * (1.0 + std::abs(exact)));
      }
      for (int p = 0; p < 50; ++p) {
        const double r = radial_log_moment(WeightModel::ginibre(), m, p + 1).log_value -
                         radial_log_moment(WeightModel::ginibre(), m, p).log_value;
        CHECK(std::exp(r) == Approx((p + 1) / m).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("log moment gaps are increasing") {
    for (const auto& w : {WeightModel::ginibre(), WeightModel::power(2), WeightModel::radial_poly({1.0, 0.5})}) {
      double prev = -INFINITY, last = radial_log_moment(w, 20.0, 0).log_value;
      for (int p = 1; p < 60; ++p) {
        const double cur = radial_log_moment(w, 20.0, p).log_value;
        CHECK(cur - last > prev - 1e-12);
        prev = cur - last;
        last = cur;
      }
    }
  }

  TEST_CASE("polar grid examples and refinement") {
    auto gauss = [](cplx z) { return std::exp(-std::norm(z)); };
    CHECK(integrate_polar_grid(gauss, 10.0, 200, 16) == Approx(1.0).epsilon(1e-10));
    CHECK(integrate_polar_grid([](cplx) { return 0.0; }, 3.0, 50, 8) == 0.0);
    // 2 int r e^{-r^40} dr = Gamma(1/20) / 20
    auto disk = [](cplx z) { return std::exp(-std::pow(std::abs(z), 40)); };
    const double d = integrate_polar_grid(disk, 3.0, 400, 16);
    CHECK(std::abs(d - std::tgamma(0.05) / 20) < 1e-8);
    CHECK(std::abs(integrate_polar_grid(disk, 3.0, 800, 32) - d) < 1e-8);
    CHECK(std::abs(integrate_polar_grid(gauss, 10.0, 400, 32) - integrate_polar_grid(gauss, 10.0, 200, 16)) < 1e-8);
    const PolarGrid g = make_polar_grid(2.0, 20, 6);
    double total = 0.0;
    for (double x : g.weights) total += x;
    CHECK(total == Approx(4.0));
  }

  TEST_CASE("double-double arithmetic and Cholesky") {
    const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
    const DoubleDouble back = third * DoubleDouble(3.0) - DoubleDouble(1.0);
    CHECK(std::abs(static_cast<double>(back)) < 1e-30);
    const DoubleDouble s = sqrt(DoubleDouble(2.0));
    CHECK(std::abs(static_cast<double>(s * s - DoubleDouble(2.0))) < 1e-30);
    // Hilbert matrix of order 8: condition ~1.5e10
    Eigen::MatrixXd h(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) h(i, j) = 1.0 / (i + j + 1);
    const auto inv = inverse_cholesky_factor_dd(h);
    REQUIRE(inv.has_value());
    const Eigen::MatrixXd id = (*inv) * h * inv->transpose();
    CHECK((id - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-6);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_FALSE(inverse_cholesky_factor_dd(bad).has_value());
  }
}
