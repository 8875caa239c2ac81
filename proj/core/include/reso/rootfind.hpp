#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reso/jost.hpp"
#include "reso/potential.hpp"

namespace reso {

/// Rectangle in the complex k-plane. Resonance searches use im_max <= 0.
struct KWindow {
  double re_min, re_max, im_min, im_max;

  bool valid() const { return re_min < re_max && im_min < im_max; }
  bool contains(Cplx k, double margin = 0.0) const {
    return k.real() >= re_min - margin && k.real() <= re_max + margin &&
           k.imag() >= im_min - margin && k.imag() <= im_max + margin;
  }
};

/// The isolated pair of Jost zeros at one control point. Labels "a"/"b"
/// carry identity under continuation; they have no physical meaning.
struct Doublet {
  Cplx k1, k2;
  ControlPoint control;
  bool degenerate = false;

  Cplx midpoint() const { return 0.5 * (k1 + k2); }
  double gap() const { return std::abs(k1 - k2); }
};

/// Scale-aware zero criterion: |f(k)| < tau_abs + tau_rel * median of |f|
/// on a circle of radius 1e-2 around k.
double zero_threshold(const PotentialProfile& p, Cplx k);
bool is_zero(const PotentialProfile& p, Cplx k);

/// Newton refinement of f(-k) = 0 from a caller-supplied basin guess.
Cplx polish_zero(const PotentialProfile& p, Cplx guess, int max_steps = 50);

/// All distinct zeros in the window, seeded from local minima of |f| on a
/// grid_n x grid_n grid. Zeros closer than 1e-6 are merged.
std::vector<Cplx> scan_window(const PotentialProfile& p, const KWindow& window, int grid_n);

/// Zero count inside the window by the argument principle,
/// (1/2 pi i) contour integral of f'/f along the rectangle boundary.
int argument_principle_count(const PotentialProfile& p, const KWindow& window, int n_points = 2048);

/// Same count on a circle around a center point.
int argument_principle_count_circle(const PotentialProfile& p, Cplx center, double radius,
                                    int n_points = 2048);

/// Continues a doublet along a path of control points. Each output sample
/// keeps the identity labels by nearest-neighbor matching; steps are halved
/// adaptively when a zero moves more than a quarter of the separation or
/// when the identities become ambiguous.
std::vector<Doublet> track_doublet(const FixedParams& fixed, std::span<const ControlPoint> path,
                                   const Doublet& initial);

/// Single continuation step used by the tracker and by analysis loops.
Doublet continue_doublet(const FixedParams& fixed, const Doublet& from, const ControlPoint& to);

}  // namespace reso
