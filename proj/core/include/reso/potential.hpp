#pragma once

#include <complex>

#include "reso/errors.hpp"
#include "reso/jet.hpp"

namespace reso {

/// The five fixed parameters of the double-barrier potential, in internal
/// units where hbar^2/2m = 1 (energies are k^2). u2 and u4 are the
/// dimensionless barrier levels; u3_scale converts the control value v3
/// into the outer-well level u3 = outer_well_sign * u3_scale * v3.
///
/// The reference resonance data are reproduced with u2 = u4 = 8 and
/// u3_scale = 2, which is what default_fixed_params() returns.
struct FixedParams {
  double u2 = 8.0;
  double u4 = 8.0;
  double r1 = 1.0;
  double w3 = 1.0;        // outer-well width r3 - r2
  double w4 = 0.304892;   // outer-barrier width r4 - r3
  double u3_scale = 2.0;
  double outer_well_sign = 1.0;

  bool valid() const {
    return u2 > 0 && u4 > 0 && r1 > 0 && w3 > 0 && w4 > 0 && u3_scale > 0 &&
           (outer_well_sign == 1.0 || outer_well_sign == -1.0);
  }
  double u3(double v3) const { return outer_well_sign * u3_scale * v3; }
};

inline FixedParams default_fixed_params() { return FixedParams{}; }

/// The two control parameters: inner-barrier thickness d = r2 - r1 and
/// outer-well level parameter v3.
struct ControlPoint {
  double d = 2.0;
  double v3 = 1.04;

  bool valid() const { return d > 0; }
};

struct PotentialProfile {
  FixedParams fixed;
  ControlPoint control;

  double r2() const { return fixed.r1 + control.d; }
  double r3() const { return r2() + fixed.w3; }
  double r4() const { return r3() + fixed.w4; }
  double u3() const { return fixed.u3(control.v3); }

  bool valid() const {
    return fixed.valid() && control.valid() && fixed.r1 < r2() && r2() < r3() && r3() < r4();
  }
};

/// Region wave number K_i(k) = ((-1)^i (U_i - k^2))^(1/2), principal branch.
/// Regions: 2 inner barrier, 3 outer well, 4 outer barrier.
inline Cplx region_wave_number(const PotentialProfile& p, int region, Cplx k) {
  switch (region) {
    case 2:
      return std::sqrt(Cplx(p.fixed.u2) - k * k);
    case 3:
      return std::sqrt(k * k - Cplx(p.u3()));
    case 4:
      return std::sqrt(Cplx(p.fixed.u4) - k * k);
    default:
      throw DomainError("region_wave_number: region index must be 2, 3 or 4");
  }
}

}  // namespace reso
