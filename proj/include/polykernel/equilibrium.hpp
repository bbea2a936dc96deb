#pragma once

// Equilibrium geometry of radial weights: the droplet is the disk |z| <= R
// with R Q'(R) = 2, the equilibrium measure is Delta Q 1_{|z| <= R} dA.

#include "polykernel/weight.hpp"

namespace polykernel {

// Solves R Q'(R) = 2 by bisection to 1e-12.
double droplet_radius(const WeightModel& w);

class RadialEquilibrium {
 public:
  explicit RadialEquilibrium(WeightModel w);

  const WeightModel& weight() const { return weight_; }
  double droplet_radius() const { return radius_; }
  bool in_droplet(cplx z) const { return std::abs(z) <= radius_; }

  // Largest subharmonic minorant: Q inside the droplet, Q(R) + 2 log(|z|/R) outside.
  double equilibrium_potential(cplx z) const { return equilibrium_potential_radial(std::abs(z)); }
  double equilibrium_potential_radial(double r) const;
  // d/dr of Q-hat from the inside and from the outside of the droplet boundary.
  double potential_slope_inside() const;
  double potential_slope_outside() const;

  // Mass of Delta Q 1_S dA, 2 int_0^R Delta Q(r) r dr, by Gauss-Legendre.
  double droplet_mass(int n_quad = 128) const;
  // sigma([0, r]) = r Q'(r) / 2 for r <= R.
  double cumulative_mass(double r) const;

  // I(sigma) = 1/2 int int log 1/|z-w|^2 + int Q, at the equilibrium measure.
  double weighted_energy(int n_quad = 128) const;

  // sup of Delta Q over dist(., S) <= 1.
  double laplacian_sup_near_droplet() const;

 private:
  WeightModel weight_;
  double radius_;
};

}  // namespace polykernel
