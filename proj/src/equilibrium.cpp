#include "polykernel/equilibrium.hpp"

#include <cmath>

#include "polykernel/quadrature.hpp"

namespace polykernel {

double droplet_radius(const WeightModel& w) {
  // r Q'(r) is increasing since d/dr (r Q') = 4 r Delta Q.
  auto mass = [&](double r) { return 0.5 * r * w.radial_derivative(r); };
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (mass(hi) < 1.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) throw ConfigError("droplet_radius: no bracketing interval, weight " + w.id() + " grows too slowly");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RadialEquilibrium::RadialEquilibrium(WeightModel w) : weight_(std::move(w)), radius_(polykernel::droplet_radius(weight_)) {}

double RadialEquilibrium::equilibrium_potential_radial(double r) const {
  if (r <= radius_) return weight_.eval_radial(r);
  return weight_.eval_radial(radius_) + 2.0 * std::log(r / radius_);
}

double RadialEquilibrium::potential_slope_inside() const { return weight_.radial_derivative(radius_); }

double RadialEquilibrium::potential_slope_outside() const { return 2.0 / radius_; }

double RadialEquilibrium::cumulative_mass(double r) const {
  return 0.5 * std::min(r, radius_) * weight_.radial_derivative(std::min(r, radius_));
}

double RadialEquilibrium::droplet_mass(int n_quad) const {
  return integrate_radial([&](double r) { return weight_.laplacian(r); }, 0.0, radius_, n_quad);
}

double RadialEquilibrium::weighted_energy(int n_quad) const {
  if (n_quad < 64) throw ConfigError("weighted_energy: n_quad must be >= 64");
  // The circle average of log|z - w|^2 over |w| = s is log max(|z|, s)^2, so
  //   1/2 int int log 1/|z-w|^2 = -2 int_0^R log r F(r) dmu(r),
  // with dmu = 2 r Delta Q dr and F(r) = mu([0, r]) = r Q'(r) / 2.
  // Substituting r = R t^2 smooths the log endpoint.
  const QuadratureRule rule = gauss_legendre(n_quad, 0.0, 1.0);
  double log_part = 0.0, potential_part = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double r = radius_ * t * t;
    const double jac = 2.0 * radius_ * t * rule.weights[i];
    const double dmu = 2.0 * r * weight_.laplacian(r) * jac;
    log_part += -2.0 * std::log(r) * cumulative_mass(r) * dmu;
    potential_part += weight_.eval_radial(r) * dmu;
  }
  return log_part + potential_part;
}

double RadialEquilibrium::laplacian_sup_near_droplet() const {
  // Catalog Laplacians need not be monotone (radialpoly), so sample.
  double sup = 0.0;
  for (int i = 0; i <= 2048; ++i) sup = std::max(sup, weight_.laplacian((radius_ + 1.0) * i / 2048.0));
  return sup;
}

}  // namespace polykernel
