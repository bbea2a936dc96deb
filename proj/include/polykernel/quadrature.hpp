#pragma once

#include <functional>
#include <vector>

#include "polykernel/weight.hpp"

namespace polykernel {

struct LogMoment {
  double log_value;  // log M_p, M_p = int |z|^{2p} e^{-m Q} dA
  int p;
  double m;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct PanelResult {
  double value;
  double error;  // |K15 - G7|
};

// 15-point Kronrod rule with embedded 7-point Gauss error estimate.
PanelResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

// Recursive bisection until each panel meets max(rel_tol |panel|, abs_tol).
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_depth = 40);

// log M_p for M_p = 2 int_0^inf r^{2p+1} e^{-m Q(r)} dr, computed around the
// integrand mode so that no large exponent is ever formed.
LogMoment radial_log_moment(const WeightModel& w, double m, int p);

// int f dA over |z| <= r_max with dA = dx dy / pi: Gauss-Legendre in r,
// trapezoid in angle.
double integrate_polar_grid(const std::function<double(cplx)>& f, double r_max, int n_r, int n_phi);

// int f(|z|) dA over |z| in [r_lo, r_hi] = 2 int f(r) r dr.
double integrate_radial(const std::function<double(double)>& f, double r_lo, double r_hi, int n_r);

// Precomputed polar grid with weights folded in (weights sum to r_max^2).
struct PolarGrid {
  std::vector<cplx> points;
  std::vector<double> weights;
};
PolarGrid make_polar_grid(double r_max, int n_r, int n_phi);

}  // namespace polykernel
