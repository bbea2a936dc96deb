#pragma once

#include "polykernel/errors.hpp"

namespace polykernel {

inline constexpr int kMaxLaguerreDegree = 64;

// Associated Laguerre polynomial L^1_k by the three-term recurrence
//   (j+1) L_{j+1} = (2j + 2 - x) L_j - (j+1) L_{j-1},  L_0 = 1, L_1 = 2 - x.
double laguerre_assoc1(int degree, double x);
cplx laguerre_assoc1(int degree, cplx x);

}  // namespace polykernel
