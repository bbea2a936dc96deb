#pragma once

// Gram factorization of Pol_{q,n} = span{ conj(z)^r z^j : r < q, j < n } in
// L^2(e^{-m Q} dA) for a radial weight.
//
// Radial orthogonality makes <conj(z)^s z^k, conj(z)^r z^j> vanish unless
// j - r = k - s =: d, and then it equals M_{r+s+d}. The Gram matrix therefore
// splits into one block per degree offset d in [-(q-1), n-1], each of size
// at most q, which is diagonally rescaled to unit diagonal and
// Cholesky-factored.

#include <vector>

#include <Eigen/Dense>

#include "polykernel/quadrature.hpp"
#include "polykernel/weight.hpp"

namespace polykernel {

struct SpaceSpec {
  int q = 1;  // polyanalytic order
  int n = 1;  // analytic degree count
  double m = 1.0;

  int dimension() const { return n * q; }
  void validate() const;
};

struct GramBlock {
  int offset = 0;  // d = j - r
  int r_lo = 0;    // members are r = r_lo .. r_lo + size - 1, j = r + d
  std::vector<double> half_log_scale;  // 1/2 log M_{2r+d} per member
  Eigen::MatrixXd scaled;              // D^{-1/2} G D^{-1/2}
  Eigen::MatrixXd inv_factor;          // L^{-1}, scaled = L L^T
  double condition = 1.0;
  bool escalated = false;

  int size() const { return static_cast<int>(half_log_scale.size()); }
};

struct BlockFactor {
  Eigen::MatrixXd inv_factor;
  double condition;
  bool escalated;
};

// Factors a scaled (unit-diagonal) block; escalates to double-double when the
// condition estimate exceeds kEscalationCondition or when forced. Throws
// NumericalDegeneracyError if the block is not numerically positive definite.
BlockFactor factor_scaled_block(const Eigen::MatrixXd& scaled, int offset, bool force_double_double = false);

inline constexpr double kEscalationCondition = 1e12;

class GramFactorization {
 public:
  static GramFactorization assemble(const WeightModel& w, const SpaceSpec& spec);

  const SpaceSpec& spec() const { return spec_; }
  const WeightModel& weight() const { return weight_; }
  const std::vector<LogMoment>& log_moments() const { return log_moments_; }
  double log_moment(int p) const { return log_moments_[static_cast<std::size_t>(p)].log_value; }
  const std::vector<GramBlock>& blocks() const { return blocks_; }
  // Condition estimate of every scaled block, in block order.
  std::vector<double> condition_report() const;

 private:
  GramFactorization(WeightModel w, SpaceSpec spec) : spec_(spec), weight_(std::move(w)) {}

  SpaceSpec spec_;
  WeightModel weight_;
  std::vector<LogMoment> log_moments_;
  std::vector<GramBlock> blocks_;
};

}  // namespace polykernel
