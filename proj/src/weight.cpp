#include "polykernel/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polykernel {

namespace {

cplx ipow(cplx x, int e) {
  cplx out{1.0, 0.0};
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

double falling(int k, int a) {
  double out = 1.0;
  for (int i = 0; i < a; ++i) out *= static_cast<double>(k - i);
  return out;
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& tok, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("weight: bad number '" + tok + "' in " + context);
  }
}

}  // namespace

WeightModel::WeightModel(WeightFamily family, std::vector<double> coeffs, int power)
    : family_(family), coeffs_(std::move(coeffs)), power_(power) {
  compute_growth();
}

WeightModel WeightModel::ginibre() { return WeightModel(WeightFamily::Ginibre, {1.0}, 1); }

WeightModel WeightModel::power(int p) {
  if (p < 1) throw ConfigError("weight: power exponent p must be >= 1, got " + std::to_string(p));
  std::vector<double> c(static_cast<std::size_t>(p), 0.0);
  c.back() = 1.0;
  return WeightModel(WeightFamily::Power, std::move(c), p);
}

WeightModel WeightModel::radial_poly(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw ConfigError("weight: radialpoly needs at least one nonzero coefficient");
  if (coeffs.back() <= 0.0)
    throw ConfigError("weight: radialpoly leading coefficient must be positive");
  WeightModel w(WeightFamily::RadialPoly, std::move(coeffs), 0);

  // Droplet radius guess: r Q'(r) = 2 by bisection on the (assumed) monotone map.
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (hi * w.radial_derivative(hi) < 2.0) {
    hi *= 2.0;
    if (++guard > 60) throw ConfigError("weight: radialpoly grows too slowly to confine a droplet");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * w.radial_derivative(mid) < 2.0 ? lo : hi) = mid;
  }
  const double r_guess = hi;

  // Delta Q > 0 on 256 log-spaced radii in (1e-6, 10 R].
  const double a = std::log(1e-6), b = std::log(10.0 * r_guess);
  for (int i = 0; i < 256; ++i) {
    const double r = std::exp(a + (b - a) * (i + 1) / 256.0);
    if (!(w.laplacian(r) > 0.0)) {
      std::ostringstream os;
      os << "weight: radialpoly Laplacian is not positive at r=" << r;
      throw ConfigError(os.str());
    }
  }
  return w;
}

WeightModel WeightModel::parse(std::string_view spec) {
  const std::string s = trim(spec);
  const auto colon = s.find(':');
  const std::string family = s.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string{} : s.substr(colon + 1);

  auto key_value = [&](const std::string& expected_key) {
    const auto eq = args.find('=');
    if (eq == std::string::npos) throw ConfigError("weight: expected '" + expected_key + "=...' in '" + s + "'");
    const std::string key = trim(args.substr(0, eq));
    if (key != expected_key) throw ConfigError("weight: unknown parameter '" + key + "' in '" + s + "'");
    return trim(args.substr(eq + 1));
  };

  if (family == "ginibre") {
    if (!args.empty()) throw ConfigError("weight: ginibre takes no parameters, got '" + args + "'");
    return ginibre();
  }
  if (family == "power") {
    const std::string tok = key_value("p");
    const double p = parse_real(tok, s);
    if (p != std::floor(p) || p < 1 || p > 64) throw ConfigError("weight: bad power exponent '" + tok + "'");
    return power(static_cast<int>(p));
  }
  if (family == "radialpoly") {
    const std::string list = key_value("c");
    std::vector<double> c;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_real(trim(item), s));
    if (c.empty()) throw ConfigError("weight: empty coefficient list in '" + s + "'");
    return radial_poly(std::move(c));
  }
  throw ConfigError("weight: unknown family '" + family + "'");
}

std::string WeightModel::id() const {
  switch (family_) {
    case WeightFamily::Ginibre:
      return "ginibre";
    case WeightFamily::Power:
      return "power:p=" + std::to_string(power_);
    case WeightFamily::RadialPoly: {
      std::ostringstream os;
      os.precision(17);
      os << "radialpoly:c=";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      return os.str();
    }
  }
  return {};
}

void WeightModel::compute_growth() {
  // Any eps works for polynomial growth; fix eps = 1 and locate C.
  growth_epsilon_ = 1.0;
  double last_bad = 1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = std::exp(std::log(1e4) * i / 4000.0);
    if (eval_radial(r) < (1.0 + growth_epsilon_) * 2.0 * std::log(r)) last_bad = r;
  }
  growth_radius_ = last_bad;
}

double WeightModel::eval_radial(double r) const {
  const double r2 = r * r;
  double out = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) out = out * r2 + coeffs_[k];
  return out * r2;
}

double WeightModel::radial_derivative(double r) const {
  const double r2 = r * r;
  double out = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) out = out * r2 + 2.0 * static_cast<double>(k + 1) * coeffs_[k];
  return out * r;
}

double WeightModel::laplacian(double r) const {
  const double r2 = r * r;
  double out = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const double kk = static_cast<double>(k + 1);
    out = out * r2 + kk * kk * coeffs_[k];
  }
  return out;
}

cplx WeightModel::polarize(cplx z, cplx w) const { return polarization_derivative(z, w, 0, 0); }

cplx WeightModel::polarization_derivative(cplx z, cplx w, int a, int b) const {
  const cplx v = std::conj(w);
  cplx out{0.0, 0.0};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (coeffs_[i] == 0.0 || k < a || k < b) continue;
    out += coeffs_[i] * falling(k, a) * falling(k, b) * ipow(z, k - a) * ipow(v, k - b);
  }
  return out;
}

cplx WeightModel::hermitian_b(cplx z, cplx w, int dz, int dw) const {
  if (dz < 0 || dz > 2 || dw < 0 || dw > 2)
    throw ConfigError("hermitian_b: derivative orders must lie in 0..2");
  return polarization_derivative(z, w, dz + 1, dw + 1);
}

double WeightModel::h_switch(cplx z) { return 1e-3 * std::max(1.0, std::abs(z)); }

cplx WeightModel::phase_theta(cplx z, cplx w) const {
  return std::abs(w - z) < h_switch(z) ? phase_theta_series(z, w) : phase_theta_quotient(z, w);
}

cplx WeightModel::phase_theta_series(cplx z, cplx w) const { return dbar_theta_series_any(z, w, 0); }

cplx WeightModel::phase_theta_quotient(cplx z, cplx w) const { return dbar_theta_quotient_any(z, w, 0); }

cplx WeightModel::dbar_theta(cplx z, cplx w, int order) const {
  if (order < 0 || order > 2) throw ConfigError("dbar_theta: order must lie in 0..2");
  return std::abs(w - z) < h_switch(z) ? dbar_theta_series(z, w, order) : dbar_theta_quotient(z, w, order);
}

cplx WeightModel::dbar_theta_series(cplx z, cplx w, int order) const {
  if (order < 0 || order > 2) throw ConfigError("dbar_theta: order must lie in 0..2");
  return dbar_theta_series_any(z, w, order + 1);
}

cplx WeightModel::dbar_theta_quotient(cplx z, cplx w, int order) const {
  if (order < 0 || order > 2) throw ConfigError("dbar_theta: order must lie in 0..2");
  return dbar_theta_quotient_any(z, w, order + 1);
}

// dbar_w^k theta = sum_j (w - z)^j / (j+1)! d_u^{j+1} d_v^k Q(z, w)
cplx WeightModel::dbar_theta_series_any(cplx z, cplx w, int k) const {
  const cplx h = w - z;
  cplx hj{1.0, 0.0};
  cplx out{0.0, 0.0};
  for (int j = 0; j <= kThetaSeriesOrder; ++j) {
    out += hj * polarization_derivative(z, w, j + 1, k) / factorial(j + 1);
    hj *= h;
  }
  return out;
}

// The denominator is analytic in w, so dbar_w passes through to the numerator.
cplx WeightModel::dbar_theta_quotient_any(cplx z, cplx w, int k) const {
  return (polarization_derivative(w, w, 0, k) - polarization_derivative(z, w, 0, k)) / (w - z);
}

}  // namespace polykernel
