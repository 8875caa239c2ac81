#include "reso/unfolding.hpp"

#include <cmath>
#include <numbers>

#include "reso/errors.hpp"

namespace reso {

Cplx branch_sqrt(Cplx F) {
  double a = std::arg(F);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return std::sqrt(std::abs(F)) * std::polar(1.0, 0.5 * a);
}

UnfoldingCoefficients compute_coefficients(const FixedParams& fixed, const ExceptionalPoint& ep) {
  PotentialProfile p{fixed, ep.control_star};
  auto kd = jost_k_derivatives(p, ep.k_d, 3);
  Cplx fpp = kd[1], fppp = kd[2];
  if (std::abs(fpp) < 1e-6)
    throw SingularJacobian("compute_coefficients: |f''| too small at the EP");
  auto pd = jost_param_derivatives(p, ep.k_d);

  UnfoldingCoefficients u;
  u.k_d = ep.k_d;
  u.E_d = ep.k_d * ep.k_d;

  std::array<Cplx, 2> fx{pd.df_dd, pd.df_dv3};
  std::array<Cplx, 2> fxk{pd.d2f_dd_dk, pd.d2f_dv3_dk};
  for (int i = 0; i < 2; ++i) {
    u.c[i] = -8.0 * fx[i] / fpp;
    u.dvec[i] = (-1.0 / fpp) * (fxk[i] - (1.0 / fpp) * (fppp / 3.0) * fx[i]);
    // Internal units hbar^2/2m = 1: C_i = (2 k_d)^2 c_i.
    u.C[i] = 4.0 * u.k_d * u.k_d * u.c[i];
    u.Rvec[i] = u.C[i].real();
    u.Ivec[i] = u.C[i].imag();
  }

  // Cut direction: tangent of the k-plane seams, Im(c . xi_hat0) = 0 with
  // Re(c . xi_hat0) < 0. Since Re k_d^2 > 0 this also makes Rvec . xi_hat0
  // negative; it is orthogonal to Im(c), not to Ivec = Im(C), which differs
  // by the rotation arg(4 k_d^2).
  double ic1 = u.c[0].imag(), ic2 = u.c[1].imag();
  double norm_i = std::hypot(ic1, ic2);
  if (norm_i < 1e-300)
    throw SingularJacobian("compute_coefficients: Im(c) vanishes; cut direction undefined");
  std::array<double, 2> n{ic2 / norm_i, -ic1 / norm_i};
  if (u.c[0].real() * n[0] + u.c[1].real() * n[1] > 0) {
    n[0] = -n[0];
    n[1] = -n[1];
  }
  u.xi_hat0 = n;
  return u;
}

ContactK contact_k(const UnfoldingCoefficients& u, const XiPoint& xi) {
  Cplx shift = u.d_dot(xi);
  Cplx rad = branch_sqrt(0.25 * u.c_dot(xi));
  return {u.k_d + shift + rad, u.k_d + shift - rad};
}

ContactEnergy contact_energy(const UnfoldingCoefficients& u, const XiPoint& xi) {
  ContactEnergy e;
  Cplx shift = 2.0 * u.k_d * u.d_dot(xi);  // first order of (k_d + d.xi)^2 - k_d^2
  e.eps_hat = branch_sqrt(0.25 * u.C_dot(xi));
  e.e1 = u.E_d + shift + e.eps_hat;
  e.e2 = u.E_d + shift - e.eps_hat;

  double rx = u.R_dot(xi), ix = u.I_dot(xi);
  double mod = std::hypot(rx, ix);
  double re_mag = std::sqrt(std::max(0.0, mod + rx)) / (2.0 * std::numbers::sqrt2);
  double im_mag = std::sqrt(std::max(0.0, mod - rx)) / (2.0 * std::numbers::sqrt2);
  // Pair signs so that sgn(Re) sgn(Im) = sgn(Ivec . xi), picking the branch
  // with nonnegative imaginary part to match branch_sqrt's cut.
  double sgn_i = (ix > 0) - (ix < 0);
  e.im_eps = im_mag;
  e.re_eps = (sgn_i == 0) ? re_mag : sgn_i * re_mag;
  return e;
}

CutLines cut_lines(const UnfoldingCoefficients& u) {
  return {{u.xi_hat0[0], u.xi_hat0[1]}, {-u.xi_hat0[0], -u.xi_hat0[1]}};
}

}  // namespace reso
