#pragma once

// Near-diagonal approximations of the polyanalytic Bergman kernel built from
// b(z, w) = d_z dbar_w Q(z, w) and its derivatives.
//
//   q = 1:  (m b + 1/2 dbar_w(d_z b / b)) e^{m Q(z,w)}
//   q = 2:  (m^2 B0 + m B1 + B2) e^{m Q(z,w)}
//   any q:  m b L^1_{q-1}(m b |z-w|^2) e^{m Q(z,w)}   (leading order only)

#include "polykernel/weight.hpp"

namespace polykernel {

enum class KernelForm {
  Plain,     // multiplied by e^{m Q(z, w)}
  Weighted,  // multiplied by e^{m Q(z, w) - m Q(z)/2 - m Q(w)/2}
};

// b and its mixed derivatives at one (z, w); index [dz][dw].
struct BDerivatives {
  cplx d[3][3];
  cplx b() const { return d[0][0]; }
};
BDerivatives b_derivatives(const WeightModel& w, cplx z, cplx wc);

struct BianalyticCoefficients {
  cplx order0;  // -|z-w|^2 b^2
  cplx order1;  // 2b + (z-w) d b - (conj z - conj w) dbar b + |z-w|^2 (-3/2 d dbar b + d b dbar b / b)
  cplx order2;  // log-b derivative terms + |z-w|^2 M
  cplx m_term;  // M(z, w)
};
// Throws NumericalDegeneracyError when b(z, w) vanishes.
BianalyticCoefficients bianalytic_coefficients(const WeightModel& w, cplx z, cplx wc);

// 1/2 dbar_w (d_z b / b)
cplx analytic_correction(const WeightModel& w, cplx z, cplx wc);

// R_{q,m}(z, w) from dbar_w theta and dbar_w^2 theta, q in {1, 2}.
cplx r_qm_density(const WeightModel& w, int q, double m, cplx z, cplx wc);

cplx local_kernel_q1(const WeightModel& w, double m, cplx z, cplx wc, int terms, KernelForm form);
cplx local_kernel_q2(const WeightModel& w, double m, cplx z, cplx wc, int terms, KernelForm form);
cplx local_kernel_leading(const WeightModel& w, int q, double m, cplx z, cplx wc, KernelForm form);

// e^{m Q(z, w)} or its weighted counterpart, formed as one exponent.
cplx expansion_gauge(const WeightModel& w, double m, cplx z, cplx wc, KernelForm form);

}  // namespace polykernel
