// polykernel: command-line front end. Exit codes: 0 ok, 1 bad configuration,
// 2 numerical breakdown.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polykernel/asymptotics.hpp"
#include "polykernel/dpp.hpp"
#include "polykernel/io.hpp"
#include "polykernel/local_expansion.hpp"
#include "polykernel/parallel.hpp"

using namespace polykernel;

namespace {

struct RunConfig {
  std::string weight = "ginibre";
  int q = 1;
  int n = 20;
  double m = 20.0;
  std::string out;
  std::uint64_t seed = 1;
  std::string point = "0";       // z, z0 or center
  std::string m_list = "40,80,160";
  double extent = 2.0;
  int points = 41;
  int terms = 1;
  int count = 1;
  std::string rule = "m";
  int directions = 2;
  double angle = 0.0;
  bool relative = false;
};

cplx parse_complex(const std::string& s, const char* flag) {
  std::stringstream ss(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re)) throw ConfigError(std::string(flag) + ": cannot parse '" + s + "' as re[,im]");
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw ConfigError(std::string(flag) + ": cannot parse '" + s + "' as re[,im]");
  }
  if (!ss.eof() && !(ss >> std::ws).eof()) throw ConfigError(std::string(flag) + ": trailing characters in '" + s + "'");
  return {re, im};
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ConfigError(std::string(flag) + ": empty list");
  return out;
}

void emit(const RunConfig& c, const std::string& content) {
  if (c.out.empty() || c.out == "-") {
    std::cout << content;
  } else {
    write_atomic(c.out, content);
  }
}

SpaceSpec space(const RunConfig& c) {
  SpaceSpec s{c.q, c.n, c.m};
  s.validate();
  return s;
}

std::vector<cplx> square_grid(cplx center, double extent, int points) {
  if (points < 1) throw ConfigError("--points must be positive");
  std::vector<cplx> out;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      const double x = points == 1 ? 0.0 : -extent + 2.0 * extent * i / (points - 1);
      const double y = points == 1 ? 0.0 : -extent + 2.0 * extent * j / (points - 1);
      out.push_back(center + cplx(x, y));
    }
  }
  return out;
}

cplx resolve_point(const RunConfig& c, const WeightModel& w, const char* flag) {
  const cplx z = parse_complex(c.point, flag);
  return c.relative ? z * droplet_radius(w) : z;
}

int cmd_droplet(const RunConfig& c) {
  const RadialEquilibrium eq(WeightModel::parse(c.weight));
  std::printf("R = %.12f\n", eq.droplet_radius());
  if (!c.out.empty()) {
    std::ostringstream os;
    os << "r,Q,Q_hat\n";
    const double r_max = 2.0 * eq.droplet_radius();
    for (int i = 0; i < c.points; ++i) {
      const double r = r_max * i / std::max(1, c.points - 1);
      os << format_double(r) << ',' << format_double(eq.weight().eval_radial(r)) << ','
         << format_double(eq.equilibrium_potential_radial(r)) << '\n';
    }
    write_atomic(c.out, os.str());
  }
  return 0;
}

int cmd_kernel(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const KernelEvaluator k = build_space(w, space(c));
  const cplx z = resolve_point(c, w, "--z");
  const auto ws = square_grid(0.0, c.extent, c.points);
  std::vector<KernelPair> pairs;
  for (cplx x : ws) pairs.push_back({z, x});
  const auto weighted = omp::weighted_kernel_grid(k, pairs);
  std::vector<KernelRow> rows;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    rows.push_back({z, ws[i], k.kernel(z, ws[i]), std::abs(weighted[i])});
  }
  emit(c, kernel_csv(rows));
  return 0;
}

int cmd_berezin(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const KernelEvaluator k = build_space(w, space(c));
  const cplx center = resolve_point(c, w, "--center");
  const auto pts = square_grid(center, c.extent, c.points);
  const auto values = omp::berezin_grid(k, center, pts);
  std::ostringstream os;
  os << "re,im,density\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << format_double(pts[i].real()) << ',' << format_double(pts[i].imag()) << ',' << format_double(values[i])
       << '\n';
  emit(c, os.str());
  return 0;
}

int cmd_intensity(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const KernelEvaluator k = build_space(w, space(c));
  const double r_max = c.extent > 0.0 ? c.extent : 2.0 * k.droplet_radius();
  std::vector<cplx> pts;
  for (int i = 0; i < c.points; ++i) pts.push_back(r_max * i / std::max(1, c.points - 1));
  const auto values = omp::one_point_grid(k, pts);
  std::ostringstream os;
  os << "r,gamma1\n";
  for (std::size_t i = 0; i < pts.size(); ++i) os << format_double(pts[i].real()) << ',' << format_double(values[i]) << '\n';
  emit(c, os.str());
  return 0;
}

int cmd_blowup(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const auto ms = parse_list(c.m_list, "--m");
  if (c.rule != "m" && c.rule != "truncation") throw ConfigError("--rule must be 'm' or 'truncation'");
  const BlowupReport rep = blowup_ladder(w, c.q, resolve_point(c, w, "--z0"), ms,
                                         c.rule == "m" ? DegreeRule::EqualToM : DegreeRule::Truncation,
                                         BlowupGrid{c.extent, c.points});
  emit(c, dump_json(to_json(rep)));
  return 0;
}

int cmd_decay(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const auto ms = parse_list(c.m_list, "--m");
  if (c.directions < 1) throw ConfigError("--directions must be positive");
  std::vector<cplx> dirs;
  for (int i = 0; i < c.directions; ++i) dirs.push_back(std::polar(1.0, M_PI * i / c.directions));
  const DecayReport rep = decay_ladder(w, c.q, resolve_point(c, w, "--z0"), ms, dirs, c.points);
  emit(c, dump_json(to_json(rep)));
  return 0;
}

int cmd_offdroplet(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const RadialEquilibrium eq(w);
  const auto ms = parse_list(c.m_list, "--m");
  std::vector<double> radii;
  for (int i = 0; i < c.points; ++i) radii.push_back(eq.droplet_radius() * (1.1 + 0.9 * i / std::max(1, c.points - 1)));
  const cplx dir = std::polar(1.0, c.angle);
  Json out;
  out["weight"] = w.id();
  out["q"] = c.q;
  Json rows = Json::array();
  double log_c = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const SpaceSpec s{c.q, static_cast<int>(std::lround(ms[i])), ms[i]};
    s.validate();
    const KernelEvaluator k = build_space(w, s);
    if (i == 0) log_c = calibrate_offdroplet(k, eq, dir, radii);
    Json row = to_json(offdroplet_decay_check(k, eq, dir, radii, log_c));
    row = Json{{"m", ms[i]}, {"n", s.n}, {"check", row}};
    rows.push_back(row);
  }
  out["calibrated_log_c"] = log_c;
  out["rows"] = rows;
  emit(c, dump_json(out));
  return 0;
}

int cmd_local(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const KernelEvaluator k = build_space(w, space(c));
  const cplx z = resolve_point(c, w, "--z");
  const double step = 1.0 / std::sqrt(c.m);
  const auto ws = square_grid(z, c.extent * step, c.points);
  std::ostringstream os;
  os << "re_w,im_w,re_local,im_local,re_K,im_K\n";
  for (cplx x : ws) {
    cplx local;
    if (c.q == 1) {
      local = local_kernel_q1(w, c.m, z, x, c.terms, KernelForm::Weighted);
    } else if (c.q == 2) {
      local = local_kernel_q2(w, c.m, z, x, c.terms, KernelForm::Weighted);
    } else {
      if (c.terms != 1) throw ConfigError("--terms: only the leading term exists for q > 2");
      local = local_kernel_leading(w, c.q, c.m, z, x, KernelForm::Weighted);
    }
    const cplx exact = k.weighted_kernel(z, x);
    os << format_double(x.real()) << ',' << format_double(x.imag()) << ',' << format_double(local.real()) << ','
       << format_double(local.imag()) << ',' << format_double(exact.real()) << ',' << format_double(exact.imag())
       << '\n';
  }
  emit(c, os.str());
  return 0;
}

int cmd_sample(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const RadialEquilibrium eq(w);
  const KernelEvaluator k = build_space(w, space(c));
  if (c.count < 1) throw ConfigError("--count must be positive");
  const auto samples = sample_many(k, eq, c.seed, c.count);
  const std::filesystem::path dir = c.out.empty() ? "." : c.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("--out: cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "config_%04zu", i);
    write_atomic(dir / (std::string(stem) + ".csv"), configuration_csv(samples[i]));
    Json side = configuration_sidecar(samples[i]);
    side["batch_seed"] = c.seed;
    side["index"] = i;
    write_atomic(dir / (std::string(stem) + ".json"), dump_json(side));
  }
  std::printf("wrote %zu configurations to %s\n", samples.size(), dir.string().c_str());
  return 0;
}

int cmd_energy(const RunConfig& c) {
  const RadialEquilibrium eq(WeightModel::parse(c.weight));
  std::printf("I = %.12f\n", eq.weighted_energy());
  return 0;
}

int cmd_selftest(const RunConfig& c) {
  const WeightModel w = WeightModel::parse(c.weight);
  const KernelEvaluator k = build_space(w, space(c));
  const double r_max = k.droplet_radius() + 10.0 / std::sqrt(c.m);
  const double trace = adaptive_gauss_kronrod(
      [&](double r) { return 2.0 * r * k.one_point_intensity(cplx(r, 0.0)); }, 0.0, r_max + 2.0, 1e-13, 0.0);
  const cplx z = 0.3 * k.droplet_radius(), x = cplx(0.1, -0.2) * k.droplet_radius();
  const double herm = std::abs(k.weighted_kernel(z, x) - std::conj(k.weighted_kernel(x, z)));
  const double repro = k.reproducing_residual(z);
  const PolarGrid grid = make_polar_grid(r_max, 200, 2 * (c.n + c.q) + 8);
  const PointFeatures fc = k.features(z);
  double mass = 0.0;
  for (std::size_t g = 0; g < grid.points.size(); ++g) mass += grid.weights[g] * k.berezin_density(fc, k.features(grid.points[g]));
  const bool ok = std::abs(trace - c.n * c.q) < 1e-8 && herm < 1e-12 * c.m * c.q && repro < 1e-7 &&
                  std::abs(mass - 1.0) < 1e-6;
  std::printf("trace %.17g (nq = %d)\nhermitian defect %.3g\nreproducing residual %.3g\nberezin mass %.17g\n%s\n",
              trace, c.n * c.q, herm, repro, mass, ok ? "selftest passed" : "selftest FAILED");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_limit();
  CLI::App app{"Polyanalytic Bergman kernels of radial weights and their determinantal point processes"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* s) {
    s->add_option("--weight", c.weight, "ginibre | power:p=<int> | radialpoly:c=<c1>,<c2>,...")->capture_default_str();
    s->add_option("--q", c.q, "polyanalytic order")->capture_default_str();
    s->add_option("--n", c.n, "analytic degree count")->capture_default_str();
    s->add_option("--m", c.m, "scaling parameter")->capture_default_str();
    s->add_option("--out", c.out, "output path ('-' or empty: stdout)");
  };
  auto add = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    return s;
  };

  CLI::App* droplet = add("droplet", "droplet radius R with R Q'(R) = 2; --out writes r,Q,Q_hat");
  droplet->add_option("--points", c.points, "profile samples on [0, 2R]")->capture_default_str();

  CLI::App* kernel = add("kernel", "K(z,w) and |K(z,w)| e^{-mQ(z)/2-mQ(w)/2} for w on a square grid");
  kernel->add_option("--z", c.point, "fixed first argument re[,im]");
  kernel->add_option("--extent", c.extent, "grid half-width")->capture_default_str();
  kernel->add_option("--points", c.points, "grid points per axis")->capture_default_str();

  CLI::App* berezin = add("berezin", "Berezin density |K(z,w)|^2 e^{-mQ(w)} / K(z,z) around a center");
  berezin->add_option("--center", c.point, "center re[,im]");
  berezin->add_option("--extent", c.extent, "grid half-width")->capture_default_str();
  berezin->add_option("--points", c.points, "grid points per axis")->capture_default_str();

  CLI::App* intensity = add("intensity", "radial profile of Gamma^1(z) = K(z,z) e^{-mQ(z)}");
  intensity->add_option("--extent", c.extent, "largest radius")->capture_default_str();
  intensity->add_option("--points", c.points, "samples")->capture_default_str();

  CLI::App* blowup = add("blowup", "sup | |K_w| / (m Delta Q(z0)) - |L^1_{q-1}(|xi-lambda|^2)| e^{-|xi-lambda|^2/2} | over an m ladder, with log-log slope");
  blowup->remove_option(blowup->get_option("--m"));
  blowup->add_option("--m", c.m_list, "comma-separated m ladder")->capture_default_str();
  blowup->add_option("--z0", c.point, "bulk point re[,im]");
  blowup->add_flag("--relative", c.relative, "read --z0 in units of R");
  blowup->add_option("--extent", c.extent, "microscopic radius")->capture_default_str();
  blowup->add_option("--points", c.points, "grid points per axis")->capture_default_str();
  blowup->add_option("--rule", c.rule, "n = m ('m') or the truncation degree ('truncation')")->capture_default_str();

  CLI::App* decay = add("decay", "log |K_w(z0, z0 + s e^{i t})|^2 against s and the fitted slope beta(m) / sqrt(m)");
  decay->remove_option(decay->get_option("--m"));
  decay->add_option("--m", c.m_list, "comma-separated m ladder")->capture_default_str();
  decay->add_option("--z0", c.point, "bulk point re[,im]");
  decay->add_flag("--relative", c.relative, "read --z0 in units of R");
  decay->add_option("--directions", c.directions, "number of directions in [0, pi)")->capture_default_str();
  decay->add_option("--points", c.points, "separations per direction")->capture_default_str();

  CLI::App* offdroplet = add("offdroplet", "log Gamma^1 + m (Q - Q_hat) - 2 log m for |z|/R in [1.1, 2], calibrated at the first m");
  offdroplet->remove_option(offdroplet->get_option("--m"));
  offdroplet->add_option("--m", c.m_list, "comma-separated m ladder (n = m)")->capture_default_str();
  offdroplet->add_option("--angle", c.angle, "direction angle")->capture_default_str();
  offdroplet->add_option("--points", c.points, "radii")->capture_default_str();

  CLI::App* local = add("local", "near-diagonal expansion of K_w(z, w) next to the exact kernel, w within extent/sqrt(m) of z");
  local->add_option("--terms", c.terms, "expansion terms (q=1: 1..2, q=2: 1..3)")->capture_default_str();
  local->add_option("--z", c.point, "base point re[,im]");
  local->add_option("--extent", c.extent, "microscopic half-width")->capture_default_str();
  local->add_option("--points", c.points, "grid points per axis")->capture_default_str();

  CLI::App* sample = add("sample", "exact samples of the determinantal process det[K_w(z_i, z_j)] / (nq)!");
  sample->add_option("--count", c.count, "configurations")->capture_default_str();
  sample->add_option("--seed", c.seed, "batch seed")->capture_default_str();

  add("energy", "weighted logarithmic energy of the equilibrium measure");
  add("selftest", "trace, Hermitian symmetry, reproducing property and Berezin mass for one space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  // Per-subcommand default for --points where the shared default does not fit.
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  auto given = [&](const char* flag) {
    const CLI::Option* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  if (!given("--points")) {
    if (name == "blowup") c.points = 17;
    if (name == "decay") c.points = 24;
    if (name == "offdroplet") c.points = 19;
    if (name == "intensity") c.points = 200;
    if (name == "droplet") c.points = 201;
  }
  if (name == "blowup" && !given("--extent")) c.extent = 2.5;
  if (name == "intensity" && !given("--extent")) c.extent = 0.0;

  try {
    if (name == "droplet") return cmd_droplet(c);
    if (name == "kernel") return cmd_kernel(c);
    if (name == "berezin") return cmd_berezin(c);
    if (name == "intensity") return cmd_intensity(c);
    if (name == "blowup") return cmd_blowup(c);
    if (name == "decay") return cmd_decay(c);
    if (name == "offdroplet") return cmd_offdroplet(c);
    if (name == "local") return cmd_local(c);
    if (name == "sample") return cmd_sample(c);
    if (name == "energy") return cmd_energy(c);
    if (name == "selftest") return cmd_selftest(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalDegeneracyError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
