#include "polykernel/double_double.hpp"

#include <vector>

namespace polykernel {

namespace {

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace

DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * DoubleDouble(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DoubleDouble(q2);
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + DoubleDouble(q3);
}

DoubleDouble sqrt(DoubleDouble a) {
  if (a.hi <= 0.0) return {0.0, 0.0};
  const double x = std::sqrt(a.hi);
  // one Newton step: x + (a - x^2) / (2x)
  const DoubleDouble x2 = two_prod(x, x);
  const DoubleDouble corr = (a - x2) / DoubleDouble(2.0 * x);
  return DoubleDouble(x) + corr;
}

std::optional<Eigen::MatrixXd> inverse_cholesky_factor_dd(const Eigen::MatrixXd& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<DoubleDouble> l(static_cast<std::size_t>(n * n), DoubleDouble(0.0));
  auto at = [&](int i, int j) -> DoubleDouble& { return l[static_cast<std::size_t>(i * n + j)]; };
  for (int j = 0; j < n; ++j) {
    DoubleDouble diag(a(j, j));
    for (int k = 0; k < j; ++k) diag = diag - at(j, k) * at(j, k);
    if (diag <= DoubleDouble(0.0)) return std::nullopt;
    at(j, j) = sqrt(diag);
    for (int i = j + 1; i < n; ++i) {
      DoubleDouble s(a(i, j));
      for (int k = 0; k < j; ++k) s = s - at(i, k) * at(j, k);
      at(i, j) = s / at(j, j);
    }
  }
  // forward substitution for L^{-1}, column by column
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<DoubleDouble> x(static_cast<std::size_t>(n), DoubleDouble(0.0));
    for (int i = c; i < n; ++i) {
      DoubleDouble s(i == c ? 1.0 : 0.0);
      for (int k = c; k < i; ++k) s = s - at(i, k) * x[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(i)] = s / at(i, i);
      inv(i, c) = static_cast<double>(x[static_cast<std::size_t>(i)]);
    }
  }
  return inv;
}

}  // namespace polykernel
