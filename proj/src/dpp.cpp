#include "polykernel/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include <Eigen/Dense>

#include "polykernel/quadrature.hpp"
#include "polykernel/rng.hpp"

namespace polykernel {

namespace {

// Orthonormal basis values at z, with the weight e^{-mQ/2} folded in.
Eigen::VectorXcd basis_vector(const KernelEvaluator& k, cplx z) {
  const PointFeatures f = k.features(z);
  Eigen::VectorXcd v(k.spec().dimension());
  const double scale = std::exp(f.log_shift);
  Eigen::Index i = 0;
  for (const auto& b : k.factorization().blocks()) {
    cplx phase{1.0, 0.0};
    const cplx step = b.offset >= 0 ? f.unit : std::conj(f.unit);
    for (int e = 0; e < std::abs(b.offset); ++e) phase *= step;
    for (int a = 0; a < b.size(); ++a, ++i) v(i) = f.radial[static_cast<std::size_t>(i)] * scale * phase;
  }
  return v;
}

struct Envelope {
  double radius;
  std::vector<double> edges;
  std::vector<double> height;   // bound on Gamma^1 per bin
  std::vector<double> cumulative;  // normalized cumulative envelope mass
};

Envelope build_envelope(const KernelEvaluator& k, const SamplerOptions& opt) {
  Envelope env;
  env.radius = sampling_radius(k);
  const int bins = opt.envelope_bins;
  env.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) env.edges[static_cast<std::size_t>(i)] = env.radius * i / bins;
  env.height.resize(static_cast<std::size_t>(bins));
  env.cumulative.resize(static_cast<std::size_t>(bins));
  double total = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double a = env.edges[static_cast<std::size_t>(i)], b = env.edges[static_cast<std::size_t>(i) + 1];
    double h = 0.0;
    for (int s = 0; s <= 4; ++s) h = std::max(h, k.one_point_intensity(cplx(a + (b - a) * s / 4.0, 0.0)));
    h *= opt.envelope_safety;
    env.height[static_cast<std::size_t>(i)] = h;
    total += h * (b * b - a * a);
    env.cumulative[static_cast<std::size_t>(i)] = total;
  }
  for (double& c : env.cumulative) c /= total;
  return env;
}

}  // namespace

double sampling_radius(const KernelEvaluator& k) {
  return k.droplet_radius() + 6.0 / std::sqrt(k.spec().m) + 0.5;
}

PointConfiguration sample_configuration(const KernelEvaluator& k, const RadialEquilibrium& eq, std::uint64_t seed,
                                        const SamplerOptions& options) {
  (void)eq;
  const int nq = k.spec().dimension();
  // The current diagonal never exceeds the unconditioned Gamma^1, so one
  // envelope serves every draw.
  const Envelope env = build_envelope(k, options);
  CounterRng rng(seed);

  PointConfiguration out;
  out.seed = seed;
  out.spec = k.spec();
  out.weight = k.weight().id();
  out.points.reserve(static_cast<std::size_t>(nq));

  // Orthonormal frame of the remaining subspace in coefficient space.
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Identity(nq, nq);
  for (int step = 0; step < nq; ++step) {
    std::uint64_t tries = 0;
    for (;;) {
      // No acceptance yet in this draw: the rate is below 1 / tries.
      if (tries >= options.stall_window && 1.0 / static_cast<double>(tries) < options.stall_acceptance * 1.000001) {
        std::ostringstream os;
        os << "sampler stalled at draw " << step << " of " << nq << " after " << tries << " proposals (seed " << seed
           << ")";
        throw SamplerError(os.str());
      }
      ++tries;
      const double u = rng.uniform();
      const auto bin = static_cast<std::size_t>(
          std::upper_bound(env.cumulative.begin(), env.cumulative.end(), u) - env.cumulative.begin());
      const std::size_t b = std::min(bin, env.height.size() - 1);
      const double a2 = env.edges[b] * env.edges[b], c2 = env.edges[b + 1] * env.edges[b + 1];
      const double r = std::sqrt(a2 + (c2 - a2) * rng.uniform());
      const cplx z = std::polar(r, 2.0 * M_PI * rng.uniform());
      const Eigen::VectorXcd v = basis_vector(k, z);
      const Eigen::VectorXcd proj = frame.adjoint() * v;
      const double diag = proj.squaredNorm();
      if (diag > env.height[b]) {
        std::ostringstream os;
        os << "sampler envelope exceeded at |z|=" << r << " (" << diag << " > " << env.height[b] << ")";
        warn(os.str());
      }
      if (rng.uniform() * env.height[b] < diag) {
        out.points.push_back(z);
        // Remove the direction frame * proj from the frame.
        const Eigen::VectorXcd a = proj / std::sqrt(diag);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
        const Eigen::MatrixXcd q = qr.householderQ();
        frame = (frame * q).rightCols(frame.cols() - 1).eval();
        break;
      }
    }
    out.proposals += tries;
  }
  return out;
}

std::vector<PointConfiguration> sample_many(const KernelEvaluator& k, const RadialEquilibrium& eq, std::uint64_t seed,
                                            int count, const SamplerOptions& options) {
  if (count < 0) throw ConfigError("sample_many: count must be non-negative");
  std::vector<PointConfiguration> out(static_cast<std::size_t>(count));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          sample_configuration(k, eq, CounterRng::derive(seed, static_cast<std::uint64_t>(i)), options);
    } catch (...) {
#pragma omp critical(polykernel_sample_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

IntensityReport empirical_intensity(const KernelEvaluator& k, std::span<const PointConfiguration> samples,
                                    std::span<const double> edges) {
  if (samples.size() < 100) throw ConfigError("empirical_intensity: need at least 100 samples");
  if (edges.size() < 2) throw ConfigError("empirical_intensity: need at least two bin edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw ConfigError("empirical_intensity: edges must increase");
  const SpaceSpec& s0 = samples.front().spec;
  for (const auto& c : samples) {
    if (c.spec.q != s0.q || c.spec.n != s0.n || c.spec.m != s0.m || c.weight != samples.front().weight) {
      throw ConfigError("empirical_intensity: samples come from different specs");
    }
  }

  const std::size_t nb = edges.size() - 1;
  std::vector<double> sum(nb, 0.0), sum2(nb, 0.0);
  double exterior = 0.0;
  for (const auto& c : samples) {
    std::vector<double> counts(nb, 0.0);
    for (cplx z : c.points) {
      const double r = std::abs(z);
      const auto it = std::upper_bound(edges.begin(), edges.end(), r);
      if (it == edges.begin()) continue;
      if (it == edges.end()) {
        if (r == edges.back()) counts[nb - 1] += 1.0; else exterior += 1.0;
        continue;
      }
      counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
    }
    for (std::size_t b = 0; b < nb; ++b) {
      sum[b] += counts[b];
      sum2[b] += counts[b] * counts[b];
    }
  }

  IntensityReport rep;
  const auto ns = static_cast<double>(samples.size());
  rep.samples = samples.size();
  rep.mean_exterior = exterior / ns;
  for (std::size_t b = 0; b < nb; ++b) {
    IntensityBin bin{};
    bin.r_lo = edges[b];
    bin.r_hi = edges[b + 1];
    bin.mean_count = sum[b] / ns;
    bin.std_count = std::sqrt(std::max(0.0, (sum2[b] - ns * bin.mean_count * bin.mean_count) / (ns - 1.0)));
    bin.predicted = integrate_radial([&](double r) { return k.one_point_intensity(cplx(r, 0.0)); }, bin.r_lo,
                                     bin.r_hi, 48);
    const double se = bin.std_count / std::sqrt(ns);
    const double diff = bin.mean_count - bin.predicted;
    bin.z_score = se > 0.0 ? diff / se : (std::abs(diff) < 1e-12 ? 0.0 : std::copysign(INFINITY, diff));
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(bin.z_score));
    rep.bins.push_back(bin);
  }
  return rep;
}

std::vector<double> pair_density(std::span<const PointConfiguration> samples, std::span<const double> edges) {
  if (edges.size() < 2) throw ConfigError("pair_density: need at least two edges");
  const std::size_t nb = edges.size() - 1;
  std::vector<double> counts(nb, 0.0);
  for (const auto& c : samples) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      for (std::size_t j = i + 1; j < c.points.size(); ++j) {
        const double d = std::abs(c.points[i] - c.points[j]);
        const auto it = std::upper_bound(edges.begin(), edges.end(), d);
        if (it == edges.begin() || it == edges.end()) continue;
        counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
      }
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    const double area = edges[b + 1] * edges[b + 1] - edges[b] * edges[b];
    counts[b] /= area * static_cast<double>(std::max<std::size_t>(samples.size(), 1));
  }
  return counts;
}

std::vector<double> berezin_ring_profile(const KernelEvaluator& k, std::span<const cplx> centers,
                                         std::span<const double> xi_radii, int angles) {
  if (centers.empty() || angles < 1) throw ConfigError("berezin_ring_profile: need centers and angles");
  const double m = k.spec().m;
  std::vector<double> out(xi_radii.size(), 0.0);
  for (cplx c : centers) {
    const double scale = m * k.weight().laplacian(c);
    const PointFeatures fc = k.features(c);
    const auto count = static_cast<long>(xi_radii.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
      double acc = 0.0;
      for (int a = 0; a < angles; ++a) {
        const cplx xi = std::polar(xi_radii[static_cast<std::size_t>(i)], 2.0 * M_PI * a / angles);
        acc += k.berezin_density(fc, k.features(c + xi / std::sqrt(scale))) / scale;
      }
      out[static_cast<std::size_t>(i)] += acc / angles;
    }
  }
  for (double& v : out) v /= static_cast<double>(centers.size());
  return out;
}

std::vector<double> local_minima(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i)
    if (ys[i] < ys[i - 1] && ys[i] < ys[i + 1]) out.push_back(xs[i]);
  return out;
}

}  // namespace polykernel
