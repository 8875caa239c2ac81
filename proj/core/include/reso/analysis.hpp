#pragma once

#include <string>
#include <vector>

#include "reso/unfolding.hpp"

namespace reso {

/// One grid point of the eigen-surface scan: exact zeros and the contact
/// approximant, plus energies E_i = k_i^2.
struct SurfaceSample {
  ControlPoint control;
  Cplx k1, k2;
  Cplx khat1, khat2;
  Cplx E1, E2;
  bool ok = true;
  bool degenerate = false;
};

enum class CrossingClass {
  WidthCrossingEnergyAnticrossing,  // Rvec . xi_c > 0
  JointCrossing,                    // Rvec . xi_c = 0 (degeneracy)
  EnergyCrossingWidthAnticrossing,  // Rvec . xi_c < 0
  Undetermined,
};

std::string to_string(CrossingClass c);

struct SectionSample {
  double d = 0.0;
  double v3 = 0.0;
  Cplx E1, E2;       // exact, continuity-labeled
  Cplx Ehat1, Ehat2; // approximant, = base +/- eps_hat
  double dE = 0.0;      // Re E1 - Re E2 (exact)
  double dGamma = 0.0;  // Gamma_1 - Gamma_2, Gamma = -2 Im E (exact)
  double re_eps = 0.0, im_eps = 0.0;  // approximant split, sign-paired
};

struct SectionResult {
  double fixed_v3 = 0.0;
  std::vector<SectionSample> sweep;
  CrossingClass classification = CrossingClass::Undetermined;
  double crossing_d = 0.0;  // location of the Ivec . xi = 0 point
  double r_dot_xi_c = 0.0;
};

struct TrajectoryPoint {
  int step = 0;
  Cplx E;
  char branch = 'a';
};

struct TrajectoryResult {
  std::vector<TrajectoryPoint> points;  // exact pole positions, both branches
  // Conic fit u^2 + B uv + C v^2 + D = 0 over the approximant splitting
  // (u, v) = (Re eps, Im eps).
  double fit_B = 0.0, fit_C = 0.0, fit_D = 0.0;
  double cot_phi1 = 0.0;          // R1 / I1
  double asymptote_slope_1 = 0.0;  // tan(phi/2)
  double asymptote_slope_2 = 0.0;  // -cot(phi/2)
  bool degenerate_fit = false;     // collinear points (critical section)
  CrossingClass type = CrossingClass::Undetermined;
};

enum class LoopPermutation { Identity, Swap };

struct LoopSample {
  double turn_fraction = 0.0;
  ControlPoint control;
  Cplx ka, kb;
};

struct LoopResult {
  std::vector<LoopSample> path;
  int windings = 0;
  LoopPermutation permutation = LoopPermutation::Identity;
  double max_residual = 0.0;
};

/// The exact doublet at an offset xi from the EP, obtained by continuation
/// outward from the exceptional point along the ray through xi.
Doublet doublet_at(const FixedParams& fixed, const UnfoldingCoefficients& coeffs,
                   const ControlPoint& star, const XiPoint& xi);

/// Tracks the doublet over a (2 half_d) x (2 half_v3) grid centered at the
/// EP, marching outward along rays so no cut is crossed ambiguously.
std::vector<SurfaceSample> surface_scan(const FixedParams& fixed, const ExceptionalPoint& ep,
                                        const UnfoldingCoefficients& coeffs, double half_d,
                                        double half_v3, int n1, int n2, int threads = 1);

/// Sweeps d at fixed v3 and classifies the crossing/anticrossing behavior
/// at the point where Ivec . xi = 0.
SectionResult section(const FixedParams& fixed, const ExceptionalPoint& ep,
                      const UnfoldingCoefficients& coeffs, double v3_fixed, double d_min,
                      double d_max, int n);

/// Projects a section onto the complex energy plane and fits the
/// hyperbola traced by the S-matrix poles.
TrajectoryResult pole_trajectory(const SectionResult& sec, const UnfoldingCoefficients& coeffs);

/// Transports the doublet around a closed elliptical loop centered at
/// (d* + offset, v3* + offset); returns the induced permutation.
LoopResult encircle(const FixedParams& fixed, const ExceptionalPoint& ep,
                    const UnfoldingCoefficients& coeffs, double radius, int windings,
                    int samples_per_turn, const XiPoint& center_offset = {});

}  // namespace reso
