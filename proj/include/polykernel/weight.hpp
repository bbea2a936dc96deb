#pragma once

// Radial weights Q with entire polarizations.
//
// Every catalog weight is a radial polynomial Q(r) = sum_k c_k r^{2k}, so the
// polarization is Q(z, w) = sum_k c_k (z conj(w))^k. Throughout, derivatives
// are taken with respect to u = z (holomorphic) and v = conj(w)
// (anti-holomorphic); the Wirtinger derivative dbar_w acts on v only.

#include <string>
#include <string_view>
#include <vector>

#include "polykernel/errors.hpp"

namespace polykernel {

enum class WeightFamily { Ginibre, Power, RadialPoly };

class WeightModel {
 public:
  static WeightModel ginibre();
  static WeightModel power(int p);
  // coeffs[k-1] = c_k. Rejects weights whose Laplacian is not positive on
  // (0, 10 R] or which do not grow.
  static WeightModel radial_poly(std::vector<double> coeffs);
  // "ginibre", "power:p=2", "radialpoly:c=1,0.5"
  static WeightModel parse(std::string_view spec);

  WeightFamily family() const { return family_; }
  // Canonical weight string; parse(id()) reproduces the weight.
  std::string id() const;
  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()); }

  // Q(z) >= (1 + eps) log|z|^2 for |z| >= growth_radius().
  double growth_epsilon() const { return growth_epsilon_; }
  double growth_radius() const { return growth_radius_; }

  double eval(cplx z) const { return eval_radial(std::abs(z)); }
  double eval_radial(double r) const;
  // Q'(r)
  double radial_derivative(double r) const;
  // Delta Q = d dbar Q = (Q'' + Q'/r) / 4
  double laplacian(double r) const;
  double laplacian(cplx z) const { return laplacian(std::abs(z)); }

  // Q(z, w): analytic in z, anti-analytic in w.
  cplx polarize(cplx z, cplx w) const;
  // d_u^a d_v^b Q(u, v) at u = z, v = conj(w), any orders.
  cplx polarization_derivative(cplx z, cplx w, int a, int b) const;

  // d_z^dz dbar_w^dw b(z, w) with b = d_z dbar_w Q(z, w); dz, dw in 0..2.
  cplx hermitian_b(cplx z, cplx w, int dz, int dw) const;

  // Separation below which theta and its derivatives use the Taylor branch.
  static double h_switch(cplx z);

  // theta(z, w) = (Q(w) - Q(z, w)) / (w - z), with theta(z, z) = d_z Q(z).
  cplx phase_theta(cplx z, cplx w) const;
  cplx phase_theta_series(cplx z, cplx w) const;
  cplx phase_theta_quotient(cplx z, cplx w) const;

  // dbar_w^{order+1} theta(z, w); order in 0..2.
  cplx dbar_theta(cplx z, cplx w, int order) const;
  cplx dbar_theta_series(cplx z, cplx w, int order) const;
  cplx dbar_theta_quotient(cplx z, cplx w, int order) const;

  static constexpr int kThetaSeriesOrder = 8;

 private:
  WeightModel(WeightFamily family, std::vector<double> coeffs, int power);
  void compute_growth();
  cplx dbar_theta_series_any(cplx z, cplx w, int k) const;
  cplx dbar_theta_quotient_any(cplx z, cplx w, int k) const;

  WeightFamily family_;
  std::vector<double> coeffs_;
  int power_ = 1;
  double growth_epsilon_ = 1.0;
  double growth_radius_ = 1.0;
};

}  // namespace polykernel
