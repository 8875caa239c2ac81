#pragma once

// Independent cross-check for the closed-form Jost machinery: direct RK4
// integration of the radial equation phi'' = (U(r) - k^2) phi with the
// regular boundary condition phi(0) = 0, phi'(0) = 1. Nothing here shares
// code with the library's matching-based evaluation.

#include <cmath>
#include <complex>

#include "reso/potential.hpp"

namespace oracle {

using reso::Cplx;

inline double potential_at(const reso::PotentialProfile& p, double r) {
  if (r < p.fixed.r1) return 0.0;
  if (r < p.r2()) return p.fixed.u2;
  if (r < p.r3()) return p.u3();
  if (r < p.r4()) return p.fixed.u4;
  return 0.0;
}

struct OdeState {
  Cplx phi, dphi;
};

/// RK4 from r = 0 to r_end, splitting the march at region boundaries so
/// every panel sees a constant potential (no smoothing error at the jumps).
inline OdeState integrate(const reso::PotentialProfile& p, Cplx k, double r_end,
                          double h = 5e-5) {
  OdeState s{Cplx(0.0), Cplx(1.0)};
  const double stops[] = {p.fixed.r1, p.r2(), p.r3(), p.r4(), r_end};
  double r = 0.0;
  for (double b : stops) {
    b = std::min(b, r_end);
    if (b <= r) continue;
    const double span = b - r;
    const int n = std::max(1, static_cast<int>(std::ceil(span / h)));
    const double hh = span / n;
    const Cplx q = Cplx(potential_at(p, 0.5 * (r + b))) - k * k;
    auto rhs = [&](const OdeState& y) { return OdeState{y.dphi, q * y.phi}; };
    for (int i = 0; i < n; ++i) {
      OdeState k1 = rhs(s);
      OdeState k2 = rhs({s.phi + 0.5 * hh * k1.phi, s.dphi + 0.5 * hh * k1.dphi});
      OdeState k3 = rhs({s.phi + 0.5 * hh * k2.phi, s.dphi + 0.5 * hh * k2.dphi});
      OdeState k4 = rhs({s.phi + hh * k3.phi, s.dphi + hh * k3.dphi});
      s.phi += (hh / 6.0) * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
      s.dphi += (hh / 6.0) * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    }
    r = b;
    if (r >= r_end) break;
  }
  return s;
}

/// Logarithmic-derivative ratio phi'(r4) / (k phi(r4)) past the outer edge.
inline Cplx alpha4(const reso::PotentialProfile& p, Cplx k, double h = 5e-5) {
  OdeState s = integrate(p, k, p.r4(), h);
  return s.dphi / (k * s.phi);
}

/// Coefficient of the incoming wave e^{-ikr} for r > r4. Resonance poles
/// (zeros of the Jost function in the lower half plane) are exactly the k
/// where the solution is purely outgoing, i.e. where this vanishes.
inline Cplx incoming_coefficient(const reso::PotentialProfile& p, Cplx k, double h = 5e-5) {
  OdeState s = integrate(p, k, p.r4(), h);
  const Cplx i(0.0, 1.0);
  return (i * k * s.phi - s.dphi) / (2.0 * i * k) * std::exp(i * k * p.r4());
}

/// Newton refinement of a resonance position using only the RK4 march and
/// a central-difference derivative — fully independent of the library.
inline Cplx refine_resonance(const reso::PotentialProfile& p, Cplx guess, double h = 5e-5,
                             int max_steps = 30) {
  Cplx k = guess;
  for (int it = 0; it < max_steps; ++it) {
    Cplx b = incoming_coefficient(p, k, h);
    const double dk = 1e-7;
    Cplx bp = (incoming_coefficient(p, k + dk, h) - incoming_coefficient(p, k - dk, h)) /
              (2.0 * dk);
    Cplx step = b / bp;
    k -= step;
    if (std::abs(step) < 1e-12) break;
  }
  return k;
}

}  // namespace oracle
