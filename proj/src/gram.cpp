#include "polykernel/gram.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "polykernel/double_double.hpp"

namespace polykernel {

void SpaceSpec::validate() const {
  if (q < 1) throw ConfigError("space: q must be >= 1");
  if (n < 1) throw ConfigError("space: n must be >= 1");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("space: m must be a positive finite number");
}

BlockFactor factor_scaled_block(const Eigen::MatrixXd& scaled, int offset, bool force_double_double) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff(), lmax = eig.eigenvalues().maxCoeff();
  const double condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

  if (!force_double_double && condition <= kEscalationCondition) {
    const Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd lower = llt.matrixL();
      const Eigen::MatrixXd inv =
          lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(scaled.rows(), scaled.cols()));
      return {inv, condition, false};
    }
  }
  if (auto inv = inverse_cholesky_factor_dd(scaled)) return {*inv, condition, true};

  std::ostringstream os;
  os << "Gram block d=" << offset << " is not positive definite (condition estimate " << condition << ")";
  throw NumericalDegeneracyError(os.str());
}

GramFactorization GramFactorization::assemble(const WeightModel& w, const SpaceSpec& spec) {
  spec.validate();
  GramFactorization g(w, spec);
  const int q = spec.q, n = spec.n;
  const int p_max = n + q - 2;

  g.log_moments_.resize(static_cast<std::size_t>(p_max + 1));
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p <= p_max; ++p) g.log_moments_[static_cast<std::size_t>(p)] = radial_log_moment(w, spec.m, p);

  for (int p = 0; p <= p_max; ++p) {
    if (!std::isfinite(g.log_moment(p)))
      throw NumericalDegeneracyError("Gram assembly: moment M_" + std::to_string(p) + " is not finite");
  }
  // Moments are log-convex (Cauchy-Schwarz), so successive log ratios increase.
  for (int p = 1; p + 1 <= p_max; ++p) {
    const double left = g.log_moment(p) - g.log_moment(p - 1);
    const double right = g.log_moment(p + 1) - g.log_moment(p);
    if (right < left - 1e-12 * std::max(1.0, std::abs(left))) {
      std::ostringstream os;
      os << "Gram assembly: moment ratios not monotone at p=" << p << " (" << left << " vs " << right << ")";
      throw NumericalDegeneracyError(os.str());
    }
  }

  int total = 0;
  for (int d = -(q - 1); d <= n - 1; ++d) {
    GramBlock block;
    block.offset = d;
    block.r_lo = std::max(0, -d);
    const int r_hi = std::min(q - 1, n - 1 - d);
    const int size = r_hi - block.r_lo + 1;
    for (int a = 0; a < size; ++a) block.half_log_scale.push_back(0.5 * g.log_moment(2 * (block.r_lo + a) + d));
    block.scaled.resize(size, size);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        const int p = (block.r_lo + a) + (block.r_lo + b) + d;
        block.scaled(a, b) =
            a == b ? 1.0
                   : std::exp(g.log_moment(p) - block.half_log_scale[static_cast<std::size_t>(a)] -
                              block.half_log_scale[static_cast<std::size_t>(b)]);
      }
    }
    BlockFactor f = factor_scaled_block(block.scaled, d);
    block.inv_factor = std::move(f.inv_factor);
    block.condition = f.condition;
    block.escalated = f.escalated;
    total += size;
    g.blocks_.push_back(std::move(block));
  }
  if (total != spec.dimension()) throw NumericalDegeneracyError("Gram assembly: block sizes do not sum to n q");
  return g;
}

std::vector<double> GramFactorization::condition_report() const {
  std::vector<double> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.condition);
  return out;
}

}  // namespace polykernel
