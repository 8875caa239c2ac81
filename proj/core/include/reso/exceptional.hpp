#pragma once

#include "reso/rootfind.hpp"

namespace reso {

/// The parameter point (d*, v3*) and double zero k_d where the Jost
/// function and its first k-derivative vanish together.
struct ExceptionalPoint {
  ControlPoint control_star;
  Cplx k_d;
  double residual_f = 0.0;       // |f| at the solution
  double residual_fprime = 0.0;  // |f'| at the solution
  Cplx second_deriv;             // f''(k_d), nonzero at a rank-one branch point
};

struct EpDiagnostics {
  double abs_f = 0.0;
  double abs_fprime = 0.0;
  double abs_fsecond = 0.0;
  int zero_count_circle = 0;      // argument-principle count, radius 1e-2
  double figure_of_merit = 0.0;   // |k1 - k2| / |k_d| after maximal tuning
  bool is_ep = false;
};

/// Locates the exceptional point from an isolated doublet: first Newton on
/// the squared gap (k1 - k2)^2 over (d, v3) (nearly linear far from the
/// EP), then a damped 4-real-dimensional Newton on (f, f') = 0 in
/// (Re k, Im k, d, v3) with analytic jet Jacobians.
ExceptionalPoint locate_ep(const FixedParams& fixed, const Doublet& initial_doublet);

/// Residuals, argument-principle count on a small circle around k_d and
/// the degeneracy figure of merit.
EpDiagnostics verify_ep(const FixedParams& fixed, const ExceptionalPoint& ep);

}  // namespace reso
