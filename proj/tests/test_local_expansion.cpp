#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polykernel/asymptotics.hpp"
#include "polykernel/laguerre.hpp"
#include "polykernel/local_expansion.hpp"

using namespace polykernel;
using doctest::Approx;

namespace {

double weighted_modulus_error(const WeightModel& w, double m, cplx z, cplx wc, int terms) {
  const auto k = build_space(w, {2, truncation_degree(m, std::max(std::abs(z), std::abs(wc))), m});
  const double exact = std::abs(k.weighted_kernel(z, wc));
  const double approx = std::abs(local_kernel_q2(w, m, z, wc, terms, KernelForm::Weighted));
  return std::abs(approx - exact) / exact;
}

}  // namespace

TEST_SUITE("laguerre") {
  TEST_CASE("examples") {
    for (double x : {-1.0, 0.0, 0.3, 7.0}) {
      CHECK(laguerre_assoc1(0, x) == 1.0);
      CHECK(laguerre_assoc1(1, x) == Approx(2.0 - x));
    }
    CHECK(laguerre_assoc1(2, 1.0) == Approx(0.5));
    for (int k = 0; k <= kMaxLaguerreDegree; ++k) CHECK(laguerre_assoc1(k, 0.0) == Approx(k + 1.0));
    CHECK_THROWS_AS(laguerre_assoc1(-1, 0.0), ConfigError);
    CHECK_THROWS_AS(laguerre_assoc1(kMaxLaguerreDegree + 1, 0.0), ConfigError);
  }

  TEST_CASE("recurrence against the explicit series") {
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k)
      for (int i = 0; i <= 200; ++i) {
        const double x = 0.1 * i;
        worst = std::max(worst, std::abs(laguerre_assoc1(k, x) - oracle::laguerre1_sum(k, x)));
      }
    CAPTURE(worst);
    CHECK(worst < 1e-12);
    for (int k = 0; k <= 10; ++k)
      for (double x : {0.5, 1.126, 2.175, 3.0}) CHECK(laguerre_assoc1(k, x) == Approx(oracle::laguerre1_sum(k, x)).epsilon(1e-11));
  }

  TEST_CASE("zeros of L^1_2") {
    CHECK(std::abs(laguerre_assoc1(2, 3.0 - std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(laguerre_assoc1(2, 3.0 + std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(laguerre_assoc1(2, cplx(2.0, 0.0)) - cplx(laguerre_assoc1(2, 2.0), 0.0)) < 1e-15);
  }
}

TEST_SUITE("local_expansion") {
  TEST_CASE("R_{q,m} examples") {
    const auto g = WeightModel::ginibre();
    const double m = 7.0;
    const cplx z(0.2, 0.1), w(-0.3, 0.4);
    CHECK(std::abs(r_qm_density(g, 1, m, z, w) - m) < 1e-13);
    CHECK(std::abs(r_qm_density(g, 2, m, z, w) - m * laguerre_assoc1(1, m * std::norm(z - w))) < 1e-12);
    const auto p = WeightModel::power(2);
    for (cplx s : {cplx(0.3, 0.2), cplx(-0.5, 0.1)})
      CHECK(std::abs(r_qm_density(p, 2, m, s, s) - 2.0 * m * p.laplacian(s)) < 1e-12 * m);
    CHECK_THROWS_AS(r_qm_density(g, 3, m, z, w), ConfigError);
  }

  TEST_CASE("q = 1 examples") {
    const auto g = WeightModel::ginibre();
    const double m = 5.0;
    const cplx z(0.3, -0.2), w(0.1, 0.6);
    const cplx fock = m * std::exp(m * z * std::conj(w));
    CHECK(std::abs(local_kernel_q1(g, m, z, w, 2, KernelForm::Plain) - fock) < 1e-13 * std::abs(fock));
    CHECK(std::abs(local_kernel_q1(g, m, z, w, 1, KernelForm::Plain) - fock) < 1e-13 * std::abs(fock));
    // Q = |z|^4: b = 4 z conj(w), d_z b / b = 1/z has no conj(w) dependence
    const auto p = WeightModel::power(2);
    const double want = 4.0 * m * std::exp(m);
    CHECK(std::abs(local_kernel_q1(p, m, 1.0, 1.0, 2, KernelForm::Plain) - want) < 1e-12 * want);
    CHECK(std::abs(analytic_correction(p, cplx(0.7, 0.2), cplx(0.5, -0.1))) < 1e-12);
    for (cplx s : {cplx(0.4, 0.1), cplx(-0.2, 0.6)})
      CHECK(std::abs(local_kernel_q1(p, m, s, s, 1, KernelForm::Weighted) - m * p.laplacian(s)) < 1e-12 * m);
    CHECK_THROWS_AS(local_kernel_q1(p, m, 0.0, 0.5, 1, KernelForm::Plain), NumericalDegeneracyError);
    CHECK_THROWS_AS(local_kernel_q1(g, m, z, w, 3, KernelForm::Plain), ConfigError);
  }

  TEST_CASE("analytic correction against a finite-difference oracle") {
    // Q = |z|^2 + |z|^4, b = 1 + 4 z conj(w)
    const auto w = WeightModel::parse("radialpoly:c=1,1");
    const cplx z(0.3, 0.2), wc(0.25, -0.1);
    auto f = [&](cplx wv) { return w.hermitian_b(z, wv, 1, 0) / w.hermitian_b(z, wv, 0, 0); };
    // d/d conj(w) for a function anti-analytic in w: conj-direction difference
    const double h = 1e-5;
    const cplx dbar = (f(wc + h) - f(wc - h)) / (2.0 * h);
    CHECK(std::abs(analytic_correction(w, z, wc) - 0.5 * dbar) < 1e-8);
  }

  TEST_CASE("q = 2 examples") {
    const auto g = WeightModel::ginibre();
    const double m = 11.0;
    const cplx z(0.3, -0.2), w(0.1, 0.4);
    const cplx fock = m * laguerre_assoc1(1, m * std::norm(z - w)) * std::exp(m * z * std::conj(w));
    for (int terms : {2, 3}) CHECK(std::abs(local_kernel_q2(g, m, z, w, terms, KernelForm::Plain) - fock) < 1e-12 * std::abs(fock));
    const auto c = bianalytic_coefficients(g, z, w);
    CHECK(std::abs(c.order2) == 0.0);
    CHECK(std::abs(c.m_term) == 0.0);
    const auto p = WeightModel::power(2);
    for (cplx s : {cplx(0.4, 0.1), cplx(0.6, -0.3)}) {
      const cplx v = local_kernel_q2(p, m, s, s, 2, KernelForm::Plain);
      const double want = 2.0 * m * p.laplacian(s) * std::exp(m * p.eval(s));
      CHECK(std::abs(v - want) < 1e-12 * want);
      const auto cs = bianalytic_coefficients(p, s, s);
      CHECK(cs.order0 == cplx(0.0));
      CHECK(std::abs(cs.order1 - 2.0 * p.laplacian(s)) < 1e-13);
    }
    CHECK_THROWS_AS(local_kernel_q2(g, m, z, w, 4, KernelForm::Plain), ConfigError);
  }

  TEST_CASE("leading term examples") {
    const auto g = WeightModel::ginibre();
    const auto p = WeightModel::power(2);
    const double m = 9.0;
    const cplx z(0.5, 0.1), w(0.4, -0.2);
    CHECK(std::abs(local_kernel_leading(p, 1, m, z, w, KernelForm::Plain) - local_kernel_q1(p, m, z, w, 1, KernelForm::Plain)) <
          1e-12 * std::abs(local_kernel_q1(p, m, z, w, 1, KernelForm::Plain)));
    const cplx q2 = local_kernel_q2(g, m, z, w, 2, KernelForm::Plain);
    CHECK(std::abs(local_kernel_leading(g, 2, m, z, w, KernelForm::Plain) - q2) < 1e-12 * std::abs(q2));
    const double want = 3.0 * m * std::exp(m * std::norm(z));
    CHECK(std::abs(local_kernel_leading(g, 3, m, z, z, KernelForm::Plain) - want) < 1e-12 * want);
  }

  TEST_CASE("weighted modulus is symmetric under swapping the arguments") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    const auto p = WeightModel::power(2);
    for (int i = 0; i < 100; ++i) {
      const cplx z(u(gen), u(gen)), w(u(gen), u(gen));
      for (int q : {1, 2, 3}) {
        const double a = std::abs(local_kernel_leading(p, q, 30.0, z, w, KernelForm::Weighted));
        const double b = std::abs(local_kernel_leading(p, q, 30.0, w, z, KernelForm::Weighted));
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, a));
      }
    }
  }

  TEST_CASE("Ginibre q = 2 agrees with the brute-force kernel") {
    const auto g = WeightModel::ginibre();
    for (double m : {5.0, 20.0, 50.0}) {
      const auto k = build_space(g, {2, truncation_degree(m, 1.0), m});
      for (cplx z : {cplx(0.1, 0.2), cplx(-0.6, 0.5)})
        for (double off : {0.0, 0.3, 1.0, 2.5}) {
          const cplx w = z + off / std::sqrt(m) * cplx(0.6, 0.8);
          const double exact = std::abs(k.weighted_kernel(z, w));
          const double local = std::abs(local_kernel_q2(g, m, z, w, 2, KernelForm::Weighted));
          CHECK(std::abs(exact - local) < 1e-8 * 2.0 * m);
          CHECK(local == Approx(oracle::fock_q2_modulus(m, z, w)).epsilon(1e-12));
        }
    }
  }

  TEST_CASE("three terms beat two for Power(2) near the diagonal") {
    const auto p = WeightModel::power(2);
    const cplx z0 = 0.6;
    for (double m : {80.0, 160.0}) {
      const cplx w = z0 + 0.9 / std::sqrt(m) * cplx(0.0, 1.0);
      const double e2 = weighted_modulus_error(p, m, z0, w, 2);
      const double e3 = weighted_modulus_error(p, m, z0, w, 3);
      CAPTURE(m);
      CAPTURE(e2);
      CAPTURE(e3);
      CHECK(e3 < e2);
      CHECK(e2 < 5.0 / std::sqrt(m));
    }
    const double e80 = weighted_modulus_error(p, 80.0, z0, z0 + 0.9 / std::sqrt(80.0) * cplx(0.0, 1.0), 3);
    const double e320 = weighted_modulus_error(p, 320.0, z0, z0 + 0.9 / std::sqrt(320.0) * cplx(0.0, 1.0), 3);
    CAPTURE(e80);
    CAPTURE(e320);
    CHECK(e320 < e80 / 8.0);
  }
}
