// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polykernel/asymptotics.hpp"
#include "polykernel/dpp.hpp"
#include "polykernel/laguerre.hpp"
#include "polykernel/parallel.hpp"

using namespace polykernel;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<cplx> random_disk_points(std::mt19937_64& gen, int count, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(radius * std::sqrt(u(gen)), 2.0 * M_PI * u(gen)));
  return out;
}

// Errors are taken relative to the Cauchy-Schwarz scale sqrt(K(z,z) K(w,w)).
Outcome ginibre_q1_oracle() {
  std::mt19937_64 gen(20240601);
  double worst = 0.0, worst_pointwise = 0.0;
  for (double m : {1.0, 20.0, 100.0}) {
    const int n = static_cast<int>(m);
    const KernelEvaluator k = build_space(WeightModel::ginibre(), SpaceSpec{1, n, m});
    const auto zs = random_disk_points(gen, 200, 1.5), ws = random_disk_points(gen, 200, 1.5);
    for (int i = 0; i < 200; ++i) {
      const cplx got = k.kernel(zs[i], ws[i]);
      const cplx want = oracle::ginibre_q1(m, n, zs[i], ws[i]);
      const double scale = std::sqrt(oracle::ginibre_q1_diagonal(m, n, zs[i]) * oracle::ginibre_q1_diagonal(m, n, ws[i]));
      worst = std::max(worst, std::abs(got - want) / scale);
      worst_pointwise = std::max(worst_pointwise, std::abs(got - want) / std::abs(want));
    }
  }
  std::ostringstream os;
  os << "max err/sqrt(K(z,z)K(w,w)) = " << worst << " (pointwise relative " << worst_pointwise << "), tol 1e-10";
  return {worst < 1e-10, os.str()};
}

Outcome fock_collapse() {
  std::mt19937_64 gen(77);
  double worst = 0.0;
  for (double m : {5.0, 10.0, 20.0, 50.0}) {
    const double r_eff = 1.0;
    const int n = truncation_degree(m, r_eff);
    const KernelEvaluator k = build_space(WeightModel::ginibre(), SpaceSpec{2, n, m});
    const auto zs = random_disk_points(gen, 100, r_eff);
    auto ws = random_disk_points(gen, 100, r_eff);
    for (int i = 0; i < 100; ++i) {
      // Half the pairs are pulled to microscopic distance where the kernel is not negligible.
      const cplx w = i % 2 ? ws[i] : zs[i] + (ws[i] - zs[i]) * (3.0 / std::sqrt(m));
      const cplx wc = std::abs(w) <= r_eff ? w : w / std::abs(w) * r_eff;
      const double got = std::abs(k.weighted_kernel(zs[i], wc));
      const double want = oracle::fock_q2_modulus(m, zs[i], wc);
      worst = std::max(worst, std::abs(got - want) / (2.0 * m));
    }
  }
  std::ostringstream os;
  os << "max |err| / K_w(z,z) = " << worst << ", tol 1e-8";
  return {worst < 1e-8, os.str()};
}

Outcome blowup_rate() {
  const WeightModel w = WeightModel::power(2);
  const double radius = droplet_radius(w);
  const std::vector<double> ms{40.0, 80.0, 160.0};
  const BlowupReport rep = blowup_ladder(w, 2, 0.6 * radius, ms, DegreeRule::EqualToM, BlowupGrid{2.0, 17});
  std::ostringstream os;
  os << "sup errors";
  for (const auto& r : rep.runs) os << " " << r.sup_error;
  os << "; slope " << rep.fit.slope << ", need <= -0.4";
  const bool decreasing = rep.runs[0].sup_error > rep.runs[1].sup_error && rep.runs[1].sup_error > rep.runs[2].sup_error;
  return {decreasing && rep.fit.slope <= -0.4, os.str()};
}

Outcome bulk_berezin() {
  const double m = 60.0;
  const cplx z0 = 0.3;
  std::vector<double> xs;
  for (int i = 0; i <= 300; ++i) xs.push_back(3.0 * i / 300);
  double worst = 0.0;
  std::ostringstream os;
  bool ok = true;
  for (int q : {2, 3}) {
    const KernelEvaluator k = build_space(WeightModel::ginibre(), SpaceSpec{q, 60, m});
    const std::vector<cplx> centers{z0};
    const auto profile = berezin_ring_profile(k, centers, xs, 16);
    // pointwise check on a 2-D grid as well as the angular average
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x2 = xs[i] * xs[i];
      const double l = laguerre_assoc1(q - 1, x2);
      worst = std::max(worst, std::abs(profile[i] - l * l * std::exp(-x2) / q));
    }
    const PointFeatures fc = k.features(z0);
    for (int a = -12; a <= 12; ++a) {
      for (int b = -12; b <= 12; ++b) {
        const cplx xi(a * 0.25, b * 0.25);
        if (std::abs(xi) > 3.0) continue;
        const double got = k.berezin_density(fc, k.features(z0 + xi / std::sqrt(m))) / m;
        const double l = laguerre_assoc1(q - 1, std::norm(xi));
        worst = std::max(worst, std::abs(got - l * l * std::exp(-std::norm(xi)) / q));
      }
    }
    const auto minima = local_minima(xs, profile);
    const std::vector<double> expected =
        q == 2 ? std::vector<double>{std::sqrt(2.0)} : std::vector<double>{std::sqrt(3 - std::sqrt(3.0)), std::sqrt(3 + std::sqrt(3.0))};
    os << "q=" << q << " minima";
    for (double x : minima) os << " " << x;
    os << "; ";
    if (minima.size() != expected.size()) {
      ok = false;
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && std::abs(minima[i] - expected[i]) <= 0.2;
  }
  os << "max abs dev " << worst << ", tol 0.15";
  return {ok && worst < 0.15, os.str()};
}

Outcome offdiagonal_decay() {
  const std::vector<double> ms{40.0, 80.0, 160.0};
  const std::vector<cplx> dirs{1.0, std::polar(1.0, M_PI / 3)};
  std::ostringstream os;
  bool ok = true;
  for (const auto& [w, z0scale] : {std::pair{WeightModel::ginibre(), 0.0}, std::pair{WeightModel::power(2), 0.5}}) {
    const cplx z0 = z0scale * droplet_radius(w);
    const DecayReport rep = decay_ladder(w, 2, z0, ms, dirs);
    double lo = INFINITY, hi = -INFINITY;
    os << w.id() << " beta/sqrt(m)";
    for (const auto& row : rep.rows) {
      os << " " << row.beta_over_sqrt_m;
      ok = ok && row.beta_over_sqrt_m < 0.0;
      lo = std::min(lo, std::abs(row.beta_over_sqrt_m));
      hi = std::max(hi, std::abs(row.beta_over_sqrt_m));
    }
    const double spread = (hi - lo) / lo;
    os << " (spread " << spread << "); ";
    ok = ok && spread < 0.3;
  }
  os << "spread tol 0.3";
  return {ok, os.str()};
}

Outcome offdroplet() {
  std::ostringstream os;
  bool ok = true;
  for (const WeightModel& w : {WeightModel::ginibre(), WeightModel::power(2)}) {
    for (int q : {1, 2}) {
      const RadialEquilibrium eq(w);
      std::vector<double> radii;
      for (int i = 0; i <= 18; ++i) radii.push_back(eq.droplet_radius() * (1.1 + 0.9 * i / 18));
      double log_c = 0.0, worst = -INFINITY;
      for (double m : {20.0, 40.0, 80.0}) {
        const KernelEvaluator k = build_space(w, SpaceSpec{q, static_cast<int>(m), m});
        if (m == 20.0) {
          log_c = calibrate_offdroplet(k, eq, 1.0, radii);
          continue;
        }
        const OffDropletCheck c = offdroplet_decay_check(k, eq, 1.0, radii, log_c, 1.1);
        ok = ok && c.passed;
        worst = std::max(worst, c.worst_margin - log_c);
      }
      os << w.id() << " q=" << q << " excess " << worst << "; ";
    }
  }
  os << "allowed log 1.1 = " << std::log(1.1);
  return {ok, os.str()};
}

Outcome structural() {
  std::mt19937_64 gen(5);
  double herm = 0.0, trace = 0.0, mass = 0.0, repro = 0.0;
  bool psd = true;
  for (const WeightModel& w : {WeightModel::ginibre(), WeightModel::power(2)}) {
    for (int q : {1, 2}) {
      for (double m : {20.0, 40.0}) {
        const int n = static_cast<int>(m);
        const KernelEvaluator k = build_space(w, SpaceSpec{q, n, m});
        const double radius = k.droplet_radius();
        const double r_max = radius + 10.0 / std::sqrt(m);
        const auto pts = random_disk_points(gen, 20, 1.2 * radius);
        for (int i = 0; i + 1 < 20; ++i) {
          const cplx a = k.weighted_kernel(pts[i], pts[i + 1]), b = k.weighted_kernel(pts[i + 1], pts[i]);
          const double scale = std::sqrt(k.one_point_intensity(pts[i]) * k.one_point_intensity(pts[i + 1]));
          herm = std::max(herm, std::abs(a - std::conj(b)) / scale);
        }
        const double tr = adaptive_gauss_kronrod(
            [&](double r) { return 2.0 * r * k.one_point_intensity(cplx(r, 0.0)); }, 0.0, r_max + 2.0, 1e-13, 0.0);
        trace = std::max(trace, std::abs(tr - n * q));
        const PolarGrid grid = make_polar_grid(r_max, 200, 2 * (n + q) + 8);
        for (int c = 0; c < 3; ++c) {
          const cplx center = pts[c] * 0.8;
          const PointFeatures fc = k.features(center);
          double s = 0.0;
          for (std::size_t g = 0; g < grid.points.size(); ++g)
            s += grid.weights[g] * k.berezin_density(fc, k.features(grid.points[g]));
          mass = std::max(mass, std::abs(s - 1.0));
          repro = std::max(repro, k.reproducing_residual(center));
        }
        for (int t = 0; t < 5; ++t) {
          const auto sub = random_disk_points(gen, std::min(6, n * q), radius);
          if (k.k_point_intensity(sub) < 0.0) psd = false;
        }
      }
    }
  }
  std::ostringstream os;
  os << "hermitian " << herm << ", |trace - nq| " << trace << " (1e-8), |berezin mass - 1| " << mass
     << " (1e-6), reproducing " << repro << " (1e-7), k-point psd " << (psd ? "yes" : "no");
  return {herm < 1e-12 && trace < 1e-8 && mass < 1e-6 && repro < 1e-7 && psd, os.str()};
}

Outcome sampler() {
  const WeightModel w = WeightModel::ginibre();
  const RadialEquilibrium eq(w);
  const KernelEvaluator k = build_space(w, SpaceSpec{2, 20, 20.0});
  const auto samples = sample_many(k, eq, 424242, 500);
  bool counts = true;
  for (const auto& c : samples) counts = counts && c.points.size() == 40;
  std::vector<double> edges;
  for (int i = 0; i <= 8; ++i) edges.push_back(1.3 * i / 8);
  const IntensityReport rep = empirical_intensity(k, samples, edges);
  std::ostringstream os;
  os << "counts all 40: " << (counts ? "yes" : "no") << ", max |z| " << rep.max_abs_z << " (tol 4)";
  return {counts && rep.max_abs_z < 4.0, os.str()};
}

Outcome equilibrium() {
  const double r1 = droplet_radius(WeightModel::ginibre());
  const double r2 = droplet_radius(WeightModel::power(2));
  const double energy = RadialEquilibrium(WeightModel::ginibre()).weighted_energy();
  const double mc = oracle::ginibre_energy_mc(99, 4000000);
  std::ostringstream os;
  os.precision(15);
  os << "R(ginibre) " << r1 << ", R(power:p=2) " << r2 << " vs " << std::pow(2.0, -0.25) << ", I " << energy
     << " vs MC " << mc;
  const bool ok = std::abs(r1 - 1.0) < 1e-12 && std::abs(r2 - std::pow(2.0, -0.25)) < 1e-12 &&
                  std::abs(energy - mc) < 1e-3 && std::abs(energy - 0.75) < 1e-3;
  return {ok, os.str()};
}

}  // namespace

int main() {
  apply_thread_limit();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ginibre q=1 oracle", ginibre_q1_oracle},
      {"ginibre q=2 fock collapse", fock_collapse},
      {"bulk blow-up rate, power:p=2", blowup_rate},
      {"bulk berezin profile and rings", bulk_berezin},
      {"off-diagonal decay coefficient", offdiagonal_decay},
      {"decay outside the droplet", offdroplet},
      {"structural invariants", structural},
      {"sampler statistics", sampler},
      {"equilibrium radius and energy", equilibrium},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
