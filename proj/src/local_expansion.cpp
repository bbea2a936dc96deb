#include "polykernel/local_expansion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "polykernel/laguerre.hpp"

namespace polykernel {

namespace {

void require_nonvanishing(cplx b, cplx z, cplx wc) {
  if (!(std::abs(b) >= std::numeric_limits<double>::min())) {
    std::ostringstream os;
    os << "local expansion: b(z,w) vanishes at z=" << z << ", w=" << wc;
    throw NumericalDegeneracyError(os.str());
  }
}

}  // namespace

BDerivatives b_derivatives(const WeightModel& w, cplx z, cplx wc) {
  BDerivatives out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.d[i][j] = w.hermitian_b(z, wc, i, j);
  return out;
}

cplx expansion_gauge(const WeightModel& w, double m, cplx z, cplx wc, KernelForm form) {
  cplx exponent = m * w.polarize(z, wc);
  if (form == KernelForm::Weighted) exponent -= 0.5 * m * (w.eval(z) + w.eval(wc));
  return std::exp(exponent);
}

cplx analytic_correction(const WeightModel& w, cplx z, cplx wc) {
  const BDerivatives bd = b_derivatives(w, z, wc);
  const cplx b = bd.b();
  require_nonvanishing(b, z, wc);
  // dbar (db / b) = d dbar b / b - db dbar b / b^2
  return 0.5 * (bd.d[1][1] / b - bd.d[1][0] * bd.d[0][1] / (b * b));
}

BianalyticCoefficients bianalytic_coefficients(const WeightModel& w, cplx z, cplx wc) {
  const BDerivatives bd = b_derivatives(w, z, wc);
  const cplx b = bd.b();
  require_nonvanishing(b, z, wc);

  // u-derivatives are d_z, v-derivatives are dbar_w.
  const cplx bu = bd.d[1][0], bv = bd.d[0][1], buv = bd.d[1][1];
  const cplx buu = bd.d[2][0], bvv = bd.d[0][2];
  const cplx buvv = bd.d[1][2], buuv = bd.d[2][1], buuvv = bd.d[2][2];
  const cplx b2 = b * b, b3 = b2 * b, b4 = b3 * b;

  const cplx h = z - wc;          // z - w
  const cplx hbar = std::conj(h);  // conj z - conj w
  const double dist2 = std::norm(h);

  BianalyticCoefficients c{};
  c.order0 = -dist2 * b2;
  c.order1 = 2.0 * b + h * bu - hbar * bv + dist2 * (-1.5 * buv + bu * bv / b);

  // log-b derivatives as rational combinations of b-derivatives
  const cplx log_uv = buv / b - bu * bv / b2;
  const cplx log_uvv = buvv / b - 2.0 * buv * bv / b2 - bu * bvv / b2 + 2.0 * bu * bv * bv / b3;
  const cplx log_uuv = buuv / b - 2.0 * buv * bu / b2 - bv * buu / b2 + 2.0 * bv * bu * bu / b3;

  c.m_term = 1.5 * buvv * bu / b2                  //
             - 6.5 * bu * buv * bv / b3            //
             + 1.5 * buv * buv / b2                //
             - bu * bu * bvv / b3                  //
             + 4.25 * bu * bu * bv * bv / b4       //
             - (2.0 / 3.0) * buuvv / b             //
             + 1.5 * buuv * bv / b2                //
             - buu * bv * bv / b3                  //
             + (1.0 / 3.0) * bvv * buu / b2;

  // (conj w - conj z) = -hbar, (z - w) = h
  c.order2 = 2.0 * log_uv - hbar * log_uvv + h * log_uuv + dist2 * c.m_term;
  return c;
}

cplx r_qm_density(const WeightModel& w, int q, double m, cplx z, cplx wc) {
  if (q == 1) return m * w.dbar_theta(z, wc, 0);
  if (q == 2) {
    const cplx t1 = w.dbar_theta(z, wc, 0);
    const cplx t2 = w.dbar_theta(z, wc, 1);
    return 2.0 * m * t1 - m * std::conj(z - wc) * t2 - m * m * std::norm(z - wc) * t1 * t1;
  }
  throw ConfigError("r_qm_density: only q = 1 and q = 2 have closed forms, got q=" + std::to_string(q));
}

cplx local_kernel_q1(const WeightModel& w, double m, cplx z, cplx wc, int terms, KernelForm form) {
  if (terms < 1 || terms > 2) throw ConfigError("local_kernel_q1: terms must be 1 or 2");
  const cplx b = w.hermitian_b(z, wc, 0, 0);
  require_nonvanishing(b, z, wc);
  cplx amp = m * b;
  if (terms == 2) amp += analytic_correction(w, z, wc);
  return amp * expansion_gauge(w, m, z, wc, form);
}

cplx local_kernel_q2(const WeightModel& w, double m, cplx z, cplx wc, int terms, KernelForm form) {
  if (terms < 1 || terms > 3) throw ConfigError("local_kernel_q2: terms must lie in 1..3");
  const BianalyticCoefficients c = bianalytic_coefficients(w, z, wc);
  cplx amp = m * m * c.order0;
  if (terms >= 2) amp += m * c.order1;
  if (terms >= 3) amp += c.order2;
  return amp * expansion_gauge(w, m, z, wc, form);
}

cplx local_kernel_leading(const WeightModel& w, int q, double m, cplx z, cplx wc, KernelForm form) {
  if (q < 1 || q - 1 > kMaxLaguerreDegree) throw ConfigError("local_kernel_leading: q out of range");
  const cplx b = w.hermitian_b(z, wc, 0, 0);
  const cplx mb = m * b;
  return mb * laguerre_assoc1(q - 1, mb * std::norm(z - wc)) * expansion_gauge(w, m, z, wc, form);
}

}  // namespace polykernel
