#pragma once

// Double-double (compensated) arithmetic: value = hi + lo with |lo| <= ulp(hi)/2.
// Used only to refactor Gram blocks whose condition number is too large for a
// plain double Cholesky.

#include <cmath>
#include <optional>

#include <Eigen/Dense>

namespace polykernel {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit by intent
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

DoubleDouble operator+(DoubleDouble a, DoubleDouble b);
DoubleDouble operator-(DoubleDouble a, DoubleDouble b);
DoubleDouble operator*(DoubleDouble a, DoubleDouble b);
DoubleDouble operator/(DoubleDouble a, DoubleDouble b);
DoubleDouble sqrt(DoubleDouble a);
inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline bool operator<=(DoubleDouble a, DoubleDouble b) { return a.hi < b.hi || (a.hi == b.hi && a.lo <= b.lo); }

// Cholesky of a symmetric positive definite matrix in double-double, returning
// the inverse of the lower factor rounded to double; nullopt if not SPD.
std::optional<Eigen::MatrixXd> inverse_cholesky_factor_dd(const Eigen::MatrixXd& a);

}  // namespace polykernel
