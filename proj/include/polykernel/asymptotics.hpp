#pragma once

// Desk-scale checks of the bulk scaling limit, off-diagonal decay, decay
// outside the droplet and the a priori diagonal bound. Everything here is
// deterministic.

#include <span>
#include <string>
#include <vector>

#include "polykernel/equilibrium.hpp"
#include "polykernel/kernel.hpp"
#include "polykernel/parallel.hpp"

namespace polykernel {

// n >= m r^2 + 12 sqrt(m) r + 40 makes the Fock-kernel tail negligible for |z| <= r.
int truncation_degree(double m, double r_eff);

// ---- bulk blow-up -------------------------------------------------------

struct BlowupGrid {
  double radius = 2.5;
  int points_per_axis = 17;
};

// xi on the square grid clipped to |xi| <= radius with lambda = 0, followed
// by the slice xi = -lambda with xi real.
std::vector<KernelPair> blowup_grid_points(const BlowupGrid& grid);

struct BlowupSample {
  cplx xi;
  cplx lambda;
  double rescaled;  // |K_w(z, w)| / (m Delta Q(z0))
  double target;    // |L^1_{q-1}(|xi - lambda|^2)| e^{-|xi - lambda|^2 / 2}
  double error;
};

struct BlowupRun {
  double m = 0.0;
  int n = 0;
  std::vector<BlowupSample> samples;
  double sup_error = 0.0;
};

// z = z0 + xi / sqrt(m Delta Q(z0)), w = z0 + lambda / sqrt(m Delta Q(z0)).
BlowupRun blowup_compare(const KernelEvaluator& k, cplx z0, const BlowupGrid& grid);

struct SlopeFit {
  double slope = 0.0;
  bool degenerate = false;  // some error was zero; slope is -inf
};

// Least-squares slope of log(error) against log(m).
SlopeFit rate_fit(std::span<const double> m, std::span<const double> errors);

enum class DegreeRule {
  EqualToM,    // n = round(m)
  Truncation,  // n = truncation_degree(m, r_eff) over the evaluated points
};

struct BlowupReport {
  std::string weight;
  cplx z0;
  int q = 0;
  BlowupGrid grid;
  std::vector<BlowupRun> runs;
  SlopeFit fit;
};

BlowupReport blowup_ladder(const WeightModel& w, int q, cplx z0, std::span<const double> m_values, DegreeRule rule,
                           const BlowupGrid& grid);

// ---- off-diagonal decay -------------------------------------------------

inline constexpr double kLogUnderflowFloor = -745.0;

// r_{0,K} = dist(z0, complement of (S intersect {Delta Q > 0})) / 4.
double decay_radius(const RadialEquilibrium& eq, cplx z0);

struct DecayRow {
  double m = 0.0;
  int n = 0;
  std::vector<double> separations;               // s_i
  std::vector<std::vector<double>> log_values;   // [direction][i]: log |K_w(z0, z0 + s_i dir)|^2
  std::vector<std::vector<bool>> floored;        // underflow, excluded from fits
  double beta = 0.0;                             // slope of log value against s, for s <= r0
  double beta_over_sqrt_m = 0.0;
};

DecayRow offdiagonal_scan(const KernelEvaluator& k, cplx z0, std::span<const cplx> directions,
                          std::span<const double> separations, double r0);

struct DecayReport {
  std::string weight;
  cplx z0;
  int q = 0;
  double r0 = 0.0;
  std::vector<cplx> directions;
  std::vector<double> microscopic;  // t_i; s_i = t_i / sqrt(m Delta Q(z0))
  std::vector<DecayRow> rows;
};

// Microscopic separations default to t in [0, r0 sqrt(m_min Delta Q(z0))] so
// every s stays within r0 on the whole ladder.
DecayReport decay_ladder(const WeightModel& w, int q, cplx z0, std::span<const double> m_values,
                         std::span<const cplx> directions, int separations = 24);

// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

// ---- outside the droplet ------------------------------------------------

struct OffDropletPoint {
  double radius;
  double log_intensity;
  double margin;  // log Gamma^1 + m (Q - Q-hat) - 2 log m
};

std::vector<OffDropletPoint> offdroplet_margins(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                                                std::span<const double> radii);

struct OffDropletCheck {
  std::vector<OffDropletPoint> points;
  double log_bound = 0.0;  // calibrated log C + log(safety)
  double worst_margin = 0.0;
  bool passed = false;
};

// Gamma^1(z) <= C m^2 e^{-m (Q - Q-hat)(z)} with log C = calibrated_log_c.
OffDropletCheck offdroplet_decay_check(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                                       std::span<const double> radii, double calibrated_log_c, double safety = 10.0);

// max margin at the calibration space.
double calibrate_offdroplet(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                            std::span<const double> radii);

// ---- a priori diagonal bound (q = 2) -------------------------------------

struct DiagonalBound {
  double worst_ratio;
  double laplacian_sup;  // A_S
  double bound;          // m (8 + 48 A_S^2) e^{A_S}
};

DiagonalBound diagonal_bound_check(const KernelEvaluator& k, const RadialEquilibrium& eq, int radial_points = 64,
                                   int angular_points = 8);

}  // namespace polykernel
