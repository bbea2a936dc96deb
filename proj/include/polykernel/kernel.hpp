#pragma once

// Evaluation of the reproducing kernel K_{q,mQ,n} and the statistics of the
// determinantal point process it defines.
//
// Basis functions are evaluated in log-magnitude form with the weight factor
// e^{-mQ/2} folded in before any exponentiation, so the correlation kernel
// K(z,w) e^{-mQ(z)/2 - mQ(w)/2} never leaves double range.

#include <span>
#include <vector>

#include "polykernel/gram.hpp"

namespace polykernel {

// Per-point data reused across many kernel evaluations.
struct PointFeatures {
  cplx z;
  cplx unit;         // z / |z|, or 1 at the origin
  double log_shift;  // common log-magnitude factored out of `radial`
  double mq;         // m Q(z)
  // Orthonormal basis functions times e^{-mQ/2 - log_shift}, block by block;
  // the block-d entries carry the angular factor unit^d implicitly.
  std::vector<double> radial;
};

struct ResidualGrid {
  double r_max = 0.0;  // 0: R + 10 / sqrt(m)
  int n_r = 200;
  int n_phi = 0;       // 0: 2 (n + q) + 8
};

class KernelEvaluator {
 public:
  explicit KernelEvaluator(GramFactorization factorization);

  const GramFactorization& factorization() const { return factorization_; }
  const SpaceSpec& spec() const { return factorization_.spec(); }
  const WeightModel& weight() const { return factorization_.weight(); }

  PointFeatures features(cplx z) const;

  // K_{q,mQ,n}(z, w)
  cplx kernel(cplx z, cplx w) const;
  // K(z, w) e^{-mQ(z)/2 - mQ(w)/2}
  cplx weighted_kernel(cplx z, cplx w) const;
  cplx weighted_kernel(const PointFeatures& fz, const PointFeatures& fw) const;
  // log |K(z, w)| - mQ(z)/2 - mQ(w)/2; -inf when the sum vanishes.
  double log_abs_weighted_kernel(const PointFeatures& fz, const PointFeatures& fw) const;

  // Gamma^1(z) = K(z, z) e^{-mQ(z)}
  double one_point_intensity(cplx z) const;
  double one_point_intensity(const PointFeatures& f) const;
  double log_one_point_intensity(cplx z) const;

  // det [K(z_i, z_j) e^{-mQ(z_i)/2 - mQ(z_j)/2}], 1 <= k <= nq.
  double k_point_intensity(std::span<const cplx> points) const;
  // Determinantal density of nq points: k_point_intensity / (nq)!.
  double joint_density(std::span<const cplx> points) const;

  // |K(w, z)|^2 e^{-mQ(w)} / K(z, z)
  double berezin_density(cplx center, cplx w) const;
  double berezin_density(const PointFeatures& center, const PointFeatures& w) const;

  // max over monomials phi of |int phi(w) K(z, w) e^{-mQ(w)} dA(w) - phi(z)| / (1 + |phi(z)|)
  double reproducing_residual(cplx probe, const ResidualGrid& grid = {}) const;

  // Droplet radius of the underlying weight.
  double droplet_radius() const { return droplet_radius_; }

 private:
  cplx block_sum(const PointFeatures& fz, const PointFeatures& fw) const;

  GramFactorization factorization_;
  double droplet_radius_;
};

KernelEvaluator build_space(const WeightModel& w, const SpaceSpec& spec);

}  // namespace polykernel
