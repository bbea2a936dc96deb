#include "polykernel/laguerre.hpp"

#include <string>

namespace polykernel {

namespace {

template <typename T>
T recurrence(int degree, T x) {
  if (degree < 0 || degree > kMaxLaguerreDegree)
    throw ConfigError("laguerre_assoc1: degree " + std::to_string(degree) + " outside 0.." +
                      std::to_string(kMaxLaguerreDegree));
  T prev(1.0);
  if (degree == 0) return prev;
  T cur = T(2.0) - x;
  for (int j = 1; j < degree; ++j) {
    const T next = ((T(2.0 * j + 2.0) - x) * cur - T(j + 1.0) * prev) / T(j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double laguerre_assoc1(int degree, double x) { return recurrence<double>(degree, x); }

cplx laguerre_assoc1(int degree, cplx x) { return recurrence<cplx>(degree, x); }

}  // namespace polykernel
