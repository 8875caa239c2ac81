#pragma once

#include <array>

#include "reso/exceptional.hpp"

namespace reso {

/// Offset from the exceptional point in parameter space:
/// xi1 = d - d*, xi2 = v3 - v3*.
struct XiPoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
};

/// Square root with the cut along the positive real axis:
/// sqrt(F) = |F|^(1/2) exp(i arg(F)/2), arg F in [0, 2pi).
Cplx branch_sqrt(Cplx F);

/// First-order Taylor data of the doublet at the exceptional point.
/// c[i] multiplies xi_i in (k1 - k2)^2; dvec[i] multiplies xi_i in the
/// doublet midpoint shift; C[i] = 4 k_d^2 c[i] are the energy-scaled
/// coefficients; Rvec/Ivec are their real/imaginary parts; xi_hat0 is the
/// cut direction, the tangent of the k-plane seams: Im(c . xi_hat0) = 0
/// and Re(c . xi_hat0) < 0 (which implies Rvec . xi_hat0 < 0).
struct UnfoldingCoefficients {
  Cplx k_d;
  Cplx E_d;  // k_d^2
  std::array<Cplx, 2> c;
  std::array<Cplx, 2> dvec;
  std::array<Cplx, 2> C;
  std::array<double, 2> Rvec;
  std::array<double, 2> Ivec;
  std::array<double, 2> xi_hat0;

  double R_dot(const XiPoint& xi) const { return Rvec[0] * xi.xi1 + Rvec[1] * xi.xi2; }
  double I_dot(const XiPoint& xi) const { return Ivec[0] * xi.xi1 + Ivec[1] * xi.xi2; }
  Cplx C_dot(const XiPoint& xi) const { return C[0] * xi.xi1 + C[1] * xi.xi2; }
  Cplx c_dot(const XiPoint& xi) const { return c[0] * xi.xi1 + c[1] * xi.xi2; }
  Cplx d_dot(const XiPoint& xi) const { return dvec[0] * xi.xi1 + dvec[1] * xi.xi2; }
};

/// Derives the Taylor coefficients from the Jost derivatives at the EP via
/// the implicit function theorem.
UnfoldingCoefficients compute_coefficients(const FixedParams& fixed, const ExceptionalPoint& ep);

/// Contact-equivalent approximant for the wave-number doublet; both square
/// root branches are returned explicitly.
struct ContactK {
  Cplx k_plus, k_minus;
};
ContactK contact_k(const UnfoldingCoefficients& coeffs, const XiPoint& xi);

/// Contact-equivalent approximant for the energy doublet.
struct ContactEnergy {
  Cplx e1, e2;     // E_d + dE_d(xi) +/- eps_hat
  Cplx eps_hat;    // branch_sqrt(C . xi / 4)
  double re_eps;   // split per the modulus identities, sign-paired with
  double im_eps;   // sgn(Re)sgn(Im) = sgn(Ivec . xi)
};
ContactEnergy contact_energy(const UnfoldingCoefficients& coeffs, const XiPoint& xi);

/// Branch-cut directions in parameter space: the real-part seam extends
/// along +xi_hat0, the imaginary-part seam along -xi_hat0.
struct CutLines {
  std::array<double, 2> l_r_direction;
  std::array<double, 2> l_i_direction;
};
CutLines cut_lines(const UnfoldingCoefficients& coeffs);

}  // namespace reso
