#include "polykernel/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace polykernel {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double adaptive_impl(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol, int depth, const PanelResult& whole) {
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  if (whole.error <= std::max(std::max(rel_tol, kRoundoff) * std::abs(whole.value), abs_tol) || depth <= 0)
    return whole.value;
  const double mid = 0.5 * (a + b);
  const PanelResult left = gauss_kronrod15(f, a, mid);
  const PanelResult right = gauss_kronrod15(f, mid, b);
  // Halving no longer changes the value beyond round-off: the K15 - G7 gap is
  // noise, not truncation error.
  const double split = left.value + right.value;
  if (std::abs(split - whole.value) <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(split)) return split;
  return adaptive_impl(f, a, mid, rel_tol, 0.5 * abs_tol, depth - 1, left) +
         adaptive_impl(f, mid, b, rel_tol, 0.5 * abs_tol, depth - 1, right);
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double half = 0.5 * (b - a), center = 0.5 * (b + a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = center - half * x;
    rule.nodes[hi] = center + half * x;
    rule.weights[lo] = rule.weights[hi] = half * w;
  }
  return rule;
}

PanelResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[static_cast<std::size_t>(j)] * sum;
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol,
                              double abs_tol, int max_depth) {
  return adaptive_impl(f, a, b, rel_tol, abs_tol, max_depth, gauss_kronrod15(f, a, b));
}

LogMoment radial_log_moment(const WeightModel& w, double m, int p) {
  if (!(m > 0.0) || p < 0) throw ConfigError("radial_log_moment: need m > 0 and p >= 0");
  const double alpha = 2.0 * p + 1.0;

  // Mode of r^alpha e^{-m Q(r)}: m r Q'(r) = alpha, with r Q' increasing.
  auto excess = [&](double r) { return m * r * w.radial_derivative(r) - alpha; };
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw ConfigError("radial_log_moment: integrand mode not bracketed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  const double mode = 0.5 * (lo + hi);

  auto log_f = [&](double r) { return alpha * std::log(r) - m * w.eval_radial(r); };
  const double peak = log_f(mode);
  // log f(r) - log f(mode), formed from differences so that it carries no
  // cancellation error of size alpha * eps.
  const std::vector<double>& c = w.coefficients();
  const double s2 = mode * mode;
  auto log_ratio = [&](double r) {
    const double r2 = r * r;
    double factor = 0.0;  // (Q(r) - Q(mode)) / (r^2 - mode^2)
    for (std::size_t k = 0; k < c.size(); ++k) {
      double h = 0.0, rp = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        h += rp * std::pow(s2, static_cast<double>(k - j));
        rp *= r2;
      }
      factor += c[k] * h;
    }
    return alpha * std::log1p((r - mode) / mode) - m * (r - mode) * (r + mode) * factor;
  };
  const double curvature =
      alpha / (mode * mode) + m * (4.0 * w.laplacian(mode) - w.radial_derivative(mode) / mode);
  const double width = 1.0 / std::sqrt(curvature);

  const std::function<double(double)> integrand = [&](double r) {
    return r > 0.0 ? std::exp(log_ratio(r)) : 0.0;
  };

  constexpr double kPanelRelTol = 1e-15;
  constexpr double kCutoff = 1e-18;
  double total = 0.0;
  // outward to the right
  for (int k = 0; k < 100000; ++k) {
    const double a = mode + k * width, b = a + width;
    const double part = adaptive_gauss_kronrod(integrand, a, b, kPanelRelTol, 1e-3 * kCutoff * total);
    total += part;
    if (part < kCutoff * total) break;
  }
  // outward to the left, clipped at 0
  for (int k = 0; k < 100000; ++k) {
    const double b = mode - k * width;
    if (b <= 0.0) break;
    const double a = std::max(0.0, b - width);
    const double part = adaptive_gauss_kronrod(integrand, a, b, kPanelRelTol, 1e-3 * kCutoff * total);
    total += part;
    if (part < kCutoff * total) break;
  }
  return {std::log(2.0) + peak + std::log(total), p, m};
}

PolarGrid make_polar_grid(double r_max, int n_r, int n_phi) {
  const QuadratureRule radial = gauss_legendre(n_r, 0.0, r_max);
  PolarGrid grid;
  grid.points.reserve(static_cast<std::size_t>(n_r) * n_phi);
  grid.weights.reserve(static_cast<std::size_t>(n_r) * n_phi);
  for (int i = 0; i < n_r; ++i) {
    const double r = radial.nodes[static_cast<std::size_t>(i)];
    const double wr = radial.weights[static_cast<std::size_t>(i)] * r * 2.0 / n_phi;
    for (int j = 0; j < n_phi; ++j) {
      grid.points.push_back(std::polar(r, 2.0 * std::numbers::pi * j / n_phi));
      grid.weights.push_back(wr);
    }
  }
  return grid;
}

double integrate_polar_grid(const std::function<double(cplx)>& f, double r_max, int n_r, int n_phi) {
  const PolarGrid grid = make_polar_grid(r_max, n_r, n_phi);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) sum += grid.weights[i] * f(grid.points[i]);
  return sum;
}

double integrate_radial(const std::function<double(double)>& f, double r_lo, double r_hi, int n_r) {
  const QuadratureRule rule = gauss_legendre(n_r, r_lo, r_hi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * rule.nodes[i] * f(rule.nodes[i]);
  return 2.0 * sum;
}

}  // namespace polykernel
