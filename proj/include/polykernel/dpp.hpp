#pragma once

// Exact sampling of the projection DPP with kernel K_{q,mQ,n} e^{-mQ/2 - mQ/2}
// and empirical checks against its one-point intensity.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polykernel/equilibrium.hpp"
#include "polykernel/kernel.hpp"

namespace polykernel {

struct PointConfiguration {
  std::vector<cplx> points;  // n q points
  std::uint64_t seed = 0;    // stream key this configuration was drawn from
  SpaceSpec spec;
  std::string weight;
  std::uint64_t proposals = 0;
};

struct SamplerOptions {
  int envelope_bins = 256;
  double envelope_safety = 1.5;
  std::uint64_t stall_window = 1000000;  // proposals
  double stall_acceptance = 1e-6;
};

// R + 6 / sqrt(m) + 0.5
double sampling_radius(const KernelEvaluator& k);

PointConfiguration sample_configuration(const KernelEvaluator& k, const RadialEquilibrium& eq, std::uint64_t seed,
                                        const SamplerOptions& options = {});

// Configuration i uses stream CounterRng::derive(seed, i); sampled in parallel.
std::vector<PointConfiguration> sample_many(const KernelEvaluator& k, const RadialEquilibrium& eq, std::uint64_t seed,
                                            int count, const SamplerOptions& options = {});

struct IntensityBin {
  double r_lo, r_hi;
  double mean_count;
  double std_count;
  double predicted;  // int_bin Gamma^1 dA
  double z_score;
};

struct IntensityReport {
  std::vector<IntensityBin> bins;
  double mean_exterior = 0.0;  // points outside the last edge, per sample
  double max_abs_z = 0.0;
  std::size_t samples = 0;
};

// edges r_0 < r_1 < ... define the annuli. Requires >= 100 samples of one spec.
IntensityReport empirical_intensity(const KernelEvaluator& k, std::span<const PointConfiguration> samples,
                                    std::span<const double> edges);

// Pair counts per unit area (dA) of the distance annulus, averaged over samples.
std::vector<double> pair_density(std::span<const PointConfiguration> samples, std::span<const double> edges);

// Angle-averaged m^{-1} Delta Q(c)^{-1} B^<c>(c + xi / sqrt(m Delta Q(c))), averaged over centers.
std::vector<double> berezin_ring_profile(const KernelEvaluator& k, std::span<const cplx> centers,
                                         std::span<const double> xi_radii, int angles = 32);

// Abscissae of strict interior local minima of ys.
std::vector<double> local_minima(std::span<const double> xs, std::span<const double> ys);

}  // namespace polykernel
