#include "polykernel/kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "polykernel/equilibrium.hpp"

namespace polykernel {

KernelEvaluator::KernelEvaluator(GramFactorization factorization)
    : factorization_(std::move(factorization)), droplet_radius_(polykernel::droplet_radius(factorization_.weight())) {}

KernelEvaluator build_space(const WeightModel& w, const SpaceSpec& spec) {
  return KernelEvaluator(GramFactorization::assemble(w, spec));
}

PointFeatures KernelEvaluator::features(cplx z) const {
  const double m = spec().m;
  const double rho = std::abs(z);
  const double log_rho = rho > 0.0 ? std::log(rho) : -std::numeric_limits<double>::infinity();
  PointFeatures f;
  f.z = z;
  f.unit = rho > 0.0 ? z / rho : cplx{1.0, 0.0};
  f.mq = m * weight().eval_radial(rho);

  const auto& blocks = factorization_.blocks();
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(spec().dimension()));
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    for (int a = 0; a < b.size(); ++a) {
      const int power = 2 * (b.r_lo + a) + b.offset;
      const double l = (power == 0 ? 0.0 : power * log_rho) - 0.5 * f.mq - b.half_log_scale[static_cast<std::size_t>(a)];
      logs.push_back(l);
      shift = std::max(shift, l);
    }
  }
  f.log_shift = shift;
  f.radial.assign(logs.size(), 0.0);
  std::size_t base = 0;
  for (const auto& b : blocks) {
    const int s = b.size();
    for (int k = 0; k < s; ++k) {
      double acc = 0.0;
      for (int a = 0; a <= k; ++a) acc += b.inv_factor(k, a) * std::exp(logs[base + static_cast<std::size_t>(a)] - shift);
      f.radial[base + static_cast<std::size_t>(k)] = acc;
    }
    base += static_cast<std::size_t>(s);
  }
  return f;
}

cplx KernelEvaluator::block_sum(const PointFeatures& fz, const PointFeatures& fw) const {
  const cplx omega = fz.unit * std::conj(fw.unit);
  const auto& blocks = factorization_.blocks();
  const int q = spec().q;

  // omega^d for d = -(q-1) .. n-1, built outward from d = 0.
  cplx sum{0.0, 0.0};
  std::size_t base = 0;
  cplx neg_power{1.0, 0.0};
  std::vector<cplx> negatives(static_cast<std::size_t>(q), cplx{1.0, 0.0});
  for (int k = 1; k < q; ++k) {
    neg_power *= std::conj(omega);
    negatives[static_cast<std::size_t>(k)] = neg_power;
  }
  cplx pos_power{1.0, 0.0};
  for (const auto& b : blocks) {
    const int s = b.size();
    double radial = 0.0;
    for (int k = 0; k < s; ++k) radial += fz.radial[base + static_cast<std::size_t>(k)] * fw.radial[base + static_cast<std::size_t>(k)];
    base += static_cast<std::size_t>(s);
    if (b.offset < 0) {
      sum += radial * negatives[static_cast<std::size_t>(-b.offset)];
    } else {
      sum += radial * pos_power;
      pos_power *= omega;
    }
  }
  return sum;
}

cplx KernelEvaluator::weighted_kernel(const PointFeatures& fz, const PointFeatures& fw) const {
  return block_sum(fz, fw) * std::exp(fz.log_shift + fw.log_shift);
}

cplx KernelEvaluator::weighted_kernel(cplx z, cplx w) const { return weighted_kernel(features(z), features(w)); }

cplx KernelEvaluator::kernel(cplx z, cplx w) const {
  const PointFeatures fz = features(z), fw = features(w);
  return block_sum(fz, fw) * std::exp(fz.log_shift + fw.log_shift + 0.5 * (fz.mq + fw.mq));
}

double KernelEvaluator::log_abs_weighted_kernel(const PointFeatures& fz, const PointFeatures& fw) const {
  return std::log(std::abs(block_sum(fz, fw))) + fz.log_shift + fw.log_shift;
}

double KernelEvaluator::one_point_intensity(const PointFeatures& f) const {
  double s = 0.0;
  for (double u : f.radial) s += u * u;
  return s * std::exp(2.0 * f.log_shift);
}

double KernelEvaluator::one_point_intensity(cplx z) const { return one_point_intensity(features(z)); }

double KernelEvaluator::log_one_point_intensity(cplx z) const {
  const PointFeatures f = features(z);
  double s = 0.0;
  for (double u : f.radial) s += u * u;
  return std::log(s) + 2.0 * f.log_shift;
}

double KernelEvaluator::k_point_intensity(std::span<const cplx> points) const {
  const auto k = static_cast<int>(points.size());
  if (k < 1 || k > spec().dimension()) {
    std::ostringstream os;
    os << "k_point_intensity: k=" << k << " outside 1.." << spec().dimension();
    throw ConfigError(os.str());
  }
  std::vector<PointFeatures> f;
  f.reserve(points.size());
  for (cplx z : points) f.push_back(features(z));
  Eigen::MatrixXcd a(k, k);
  double scale = 1.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const cplx v = weighted_kernel(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
    a(i, i) = a(i, i).real();
    scale *= a(i, i).real();
  }
  const double det = a.partialPivLu().determinant().real();
  if (det < 0.0) {
    if (det < -1e-10 * scale) {
      std::ostringstream os;
      os << "k_point_intensity: determinant " << det << " below -1e-10 * " << scale << ", clamped to 0";
      warn(os.str());
    }
    return 0.0;
  }
  return det;
}

double KernelEvaluator::joint_density(std::span<const cplx> points) const {
  const int nq = spec().dimension();
  if (static_cast<int>(points.size()) != nq) {
    std::ostringstream os;
    os << "joint_density: expected " << nq << " points, got " << points.size();
    throw ConfigError(os.str());
  }
  return k_point_intensity(points) * std::exp(-std::lgamma(nq + 1.0));
}

double KernelEvaluator::berezin_density(const PointFeatures& center, const PointFeatures& w) const {
  double diag = 0.0;
  for (double u : center.radial) diag += u * u;
  if (!(diag > 0.0) || !std::isfinite(diag))
    throw NumericalDegeneracyError("berezin_density: K(z,z) is not positive at the center");
  return std::norm(block_sum(center, w)) / diag * std::exp(2.0 * w.log_shift);
}

double KernelEvaluator::berezin_density(cplx center, cplx w) const {
  return berezin_density(features(center), features(w));
}

double KernelEvaluator::reproducing_residual(cplx probe, const ResidualGrid& grid_params) const {
  const int q = spec().q, n = spec().n;
  const double m = spec().m;
  const double r_max = grid_params.r_max > 0.0 ? grid_params.r_max : droplet_radius_ + 10.0 / std::sqrt(m);
  const int n_phi = grid_params.n_phi > 0 ? grid_params.n_phi : 2 * (n + q) + 8;
  const PolarGrid grid = make_polar_grid(r_max, grid_params.n_r, n_phi);
  const PointFeatures fz = features(probe);

  // acc[r][j] = int conj(w)^r w^j e^{-mQ(w)/2} K_w(z, w) dA(w)
  const std::size_t count = static_cast<std::size_t>(q) * static_cast<std::size_t>(n);
  std::vector<cplx> acc(count, cplx{0.0, 0.0});
  for (std::size_t g = 0; g < grid.points.size(); ++g) {
    const cplx w = grid.points[g];
    const PointFeatures fw = features(w);
    const cplx kw = weighted_kernel(fz, fw) * grid.weights[g];
    const double rho = std::abs(w);
    const double log_rho = std::log(rho);
    // unit^e for e = j - r in [-(q-1), n-1]
    std::vector<cplx> phase(static_cast<std::size_t>(n + q - 1));
    phase[static_cast<std::size_t>(q - 1)] = 1.0;
    for (int e = 1; e < n; ++e) phase[static_cast<std::size_t>(q - 1 + e)] = phase[static_cast<std::size_t>(q - 2 + e)] * fw.unit;
    for (int e = 1; e < q; ++e) phase[static_cast<std::size_t>(q - 1 - e)] = phase[static_cast<std::size_t>(q - e)] * std::conj(fw.unit);
    for (int r = 0; r < q; ++r) {
      for (int j = 0; j < n; ++j) {
        const double mag = std::exp((r + j) * log_rho - 0.5 * fw.mq);
        acc[static_cast<std::size_t>(r * n + j)] += mag * phase[static_cast<std::size_t>(q - 1 + j - r)] * kw;
      }
    }
  }
  const double lift = std::exp(0.5 * fz.mq);
  double worst = 0.0;
  for (int r = 0; r < q; ++r) {
    for (int j = 0; j < n; ++j) {
      cplx phi{1.0, 0.0};
      for (int i = 0; i < r; ++i) phi *= std::conj(probe);
      for (int i = 0; i < j; ++i) phi *= probe;
      const cplx got = lift * acc[static_cast<std::size_t>(r * n + j)];
      worst = std::max(worst, std::abs(got - phi) / (1.0 + std::abs(phi)));
    }
  }
  return worst;
}

}  // namespace polykernel
