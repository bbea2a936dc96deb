#include "polykernel/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "polykernel/laguerre.hpp"

namespace polykernel {

namespace {

void require_bulk_point(const WeightModel& w, cplx z0, double radius, const char* who) {
  if (!(std::abs(z0) < radius) || !(w.laplacian(z0) > 0.0)) {
    std::ostringstream os;
    os << who << ": z0=" << z0 << " must lie in the open droplet |z| < " << radius << " with Delta Q(z0) > 0";
    throw ConfigError(os.str());
  }
}

}  // namespace

int truncation_degree(double m, double r_eff) {
  return static_cast<int>(std::ceil(m * r_eff * r_eff + 12.0 * std::sqrt(m) * r_eff + 40.0));
}

std::vector<KernelPair> blowup_grid_points(const BlowupGrid& grid) {
  std::vector<KernelPair> out;
  const int k = grid.points_per_axis;
  auto coord = [&](int i) { return k == 1 ? 0.0 : -grid.radius + 2.0 * grid.radius * i / (k - 1); };
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const cplx xi(coord(i), coord(j));
      if (std::abs(xi) <= grid.radius * (1.0 + 1e-12)) out.push_back({xi, 0.0});
    }
  }
  for (int i = 0; i < k; ++i) out.push_back({cplx(coord(i), 0.0), cplx(-coord(i), 0.0)});
  return out;
}

BlowupRun blowup_compare(const KernelEvaluator& k, cplx z0, const BlowupGrid& grid) {
  const WeightModel& w = k.weight();
  require_bulk_point(w, z0, k.droplet_radius(), "blowup_compare");
  const double m = k.spec().m;
  const int q = k.spec().q;
  const double scale = m * w.laplacian(z0);
  const double step = 1.0 / std::sqrt(scale);

  const std::vector<KernelPair> micro = blowup_grid_points(grid);
  std::vector<KernelPair> macro;
  macro.reserve(micro.size());
  for (const auto& p : micro) macro.push_back({z0 + p.z * step, z0 + p.w * step});
  const std::vector<cplx> values = omp::weighted_kernel_grid(k, macro);

  BlowupRun run;
  run.m = m;
  run.n = k.spec().n;
  for (std::size_t i = 0; i < micro.size(); ++i) {
    const double d2 = std::norm(micro[i].z - micro[i].w);
    BlowupSample s;
    s.xi = micro[i].z;
    s.lambda = micro[i].w;
    s.rescaled = std::abs(values[i]) / scale;
    s.target = std::abs(laguerre_assoc1(q - 1, d2)) * std::exp(-0.5 * d2);
    s.error = std::abs(s.rescaled - s.target);
    run.sup_error = std::max(run.sup_error, s.error);
    run.samples.push_back(s);
  }
  return run;
}

SlopeFit rate_fit(std::span<const double> m, std::span<const double> errors) {
  if (m.size() != errors.size() || m.size() < 3) throw ConfigError("rate_fit: need at least three (m, error) pairs");
  for (double e : errors) {
    if (!(e > 0.0)) return {-std::numeric_limits<double>::infinity(), true};
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < m.size(); ++i) {
    x.push_back(std::log(m[i]));
    y.push_back(std::log(errors[i]));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw ConfigError("rate_fit: m values must be distinct");
  return {sxy / sxx, false};
}

BlowupReport blowup_ladder(const WeightModel& w, int q, cplx z0, std::span<const double> m_values, DegreeRule rule,
                           const BlowupGrid& grid) {
  BlowupReport report;
  report.weight = w.id();
  report.z0 = z0;
  report.q = q;
  report.grid = grid;
  std::vector<double> errors;
  for (double m : m_values) {
    int n = static_cast<int>(std::lround(m));
    if (rule == DegreeRule::Truncation) {
      const double r_eff = std::abs(z0) + grid.radius / std::sqrt(m * w.laplacian(z0));
      n = truncation_degree(m, r_eff);
    }
    const KernelEvaluator k = build_space(w, SpaceSpec{q, n, m});
    report.runs.push_back(blowup_compare(k, z0, grid));
    errors.push_back(report.runs.back().sup_error);
  }
  if (m_values.size() >= 3) report.fit = rate_fit(m_values, errors);
  return report;
}

double decay_radius(const RadialEquilibrium& eq, cplx z0) {
  double dist = eq.droplet_radius() - std::abs(z0);
  if (!(eq.weight().laplacian(0.0) > 0.0)) dist = std::min(dist, std::abs(z0));
  return 0.25 * dist;
}

DecayRow offdiagonal_scan(const KernelEvaluator& k, cplx z0, std::span<const cplx> directions,
                          std::span<const double> separations, double r0) {
  const WeightModel& w = k.weight();
  const double radius = k.droplet_radius();
  require_bulk_point(w, z0, radius, "offdiagonal_scan");
  for (cplx d : directions) {
    for (double s : separations) {
      const cplx z1 = z0 + s * d / std::abs(d);
      if (std::abs(z1) > radius) {
        std::ostringstream os;
        os << "offdiagonal_scan: z1=" << z1 << " lies outside the droplet";
        throw ConfigError(os.str());
      }
    }
  }

  DecayRow row;
  row.m = k.spec().m;
  row.n = k.spec().n;
  row.separations.assign(separations.begin(), separations.end());
  const PointFeatures f0 = k.features(z0);
  std::vector<double> xs, ys;
  for (cplx d : directions) {
    const cplx unit = d / std::abs(d);
    std::vector<double> values(separations.size());
    std::vector<bool> floored(separations.size(), false);
    const auto count = static_cast<long>(separations.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      values[u] = 2.0 * k.log_abs_weighted_kernel(f0, k.features(z0 + separations[u] * unit));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > kLogUnderflowFloor)) {
        values[i] = kLogUnderflowFloor;
        floored[i] = true;
      } else if (separations[i] <= r0 * (1.0 + 1e-12)) {
        xs.push_back(separations[i]);
        ys.push_back(values[i]);
      }
    }
    row.log_values.push_back(std::move(values));
    row.floored.push_back(std::move(floored));
  }
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    row.beta = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  row.beta_over_sqrt_m = row.beta / std::sqrt(row.m);
  return row;
}

DecayReport decay_ladder(const WeightModel& w, int q, cplx z0, std::span<const double> m_values,
                         std::span<const cplx> directions, int separations) {
  const RadialEquilibrium eq(w);
  if (m_values.empty()) throw ConfigError("decay_ladder: empty m ladder");
  if (separations < 2) throw ConfigError("decay_ladder: need at least two separations");
  DecayReport report;
  report.weight = w.id();
  report.z0 = z0;
  report.q = q;
  report.r0 = decay_radius(eq, z0);
  if (!(report.r0 > 0.0)) throw ConfigError("decay_ladder: z0 is not an interior bulk point");
  report.directions.assign(directions.begin(), directions.end());

  const double lap = w.laplacian(z0);
  double m_min = m_values[0];
  for (double m : m_values) m_min = std::min(m_min, m);
  const double t_max = report.r0 * std::sqrt(m_min * lap);
  for (int i = 0; i < separations; ++i) report.microscopic.push_back(t_max * i / (separations - 1));

  for (double m : m_values) {
    const KernelEvaluator k = build_space(w, SpaceSpec{q, static_cast<int>(std::lround(m)), m});
    std::vector<double> s;
    for (double t : report.microscopic) s.push_back(t / std::sqrt(m * lap));
    report.rows.push_back(offdiagonal_scan(k, z0, directions, s, report.r0));
  }
  return report;
}

double correlation(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<OffDropletPoint> offdroplet_margins(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                                                std::span<const double> radii) {
  const double m = k.spec().m;
  if (k.spec().n > m + 1e-9) throw ConfigError("offdroplet_decay_check: requires n <= m");
  const cplx unit = direction / std::abs(direction);
  std::vector<OffDropletPoint> out(radii.size());
  const auto count = static_cast<long>(radii.size());
  for (double r : radii) {
    if (!(r > eq.droplet_radius())) throw ConfigError("offdroplet_decay_check: radii must exceed the droplet radius");
  }
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const cplx z = radii[u] * unit;
    const double log_g = k.log_one_point_intensity(z);
    const double gap = eq.weight().eval(z) - eq.equilibrium_potential(z);
    out[u] = {radii[u], log_g, log_g + m * gap - 2.0 * std::log(m)};
  }
  return out;
}

double calibrate_offdroplet(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                            std::span<const double> radii) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : offdroplet_margins(k, eq, direction, radii)) worst = std::max(worst, p.margin);
  return worst;
}

OffDropletCheck offdroplet_decay_check(const KernelEvaluator& k, const RadialEquilibrium& eq, cplx direction,
                                       std::span<const double> radii, double calibrated_log_c, double safety) {
  OffDropletCheck out;
  out.points = offdroplet_margins(k, eq, direction, radii);
  out.log_bound = calibrated_log_c + std::log(safety);
  out.worst_margin = -std::numeric_limits<double>::infinity();
  for (const auto& p : out.points) out.worst_margin = std::max(out.worst_margin, p.margin);
  out.passed = out.worst_margin <= out.log_bound;
  return out;
}

DiagonalBound diagonal_bound_check(const KernelEvaluator& k, const RadialEquilibrium& eq, int radial_points,
                                   int angular_points) {
  if (k.spec().q != 2) throw ConfigError("diagonal_bound_check: the bound is stated for q = 2");
  const double m = k.spec().m;
  DiagonalBound out{};
  out.laplacian_sup = eq.laplacian_sup_near_droplet();
  const double a = out.laplacian_sup;
  out.bound = m * (8.0 + 48.0 * a * a) * std::exp(a);
  std::vector<cplx> pts;
  for (int i = 0; i <= radial_points; ++i) {
    for (int j = 0; j < angular_points; ++j) {
      pts.push_back(std::polar(eq.droplet_radius() * i / radial_points, 2.0 * M_PI * j / angular_points));
    }
  }
  const std::vector<double> gamma = omp::one_point_grid(k, pts);
  out.worst_ratio = 0.0;
  for (double g : gamma) out.worst_ratio = std::max(out.worst_ratio, g / out.bound);
  return out;
}

}  // namespace polykernel
