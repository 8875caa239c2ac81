#include "reso/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "reso/errors.hpp"

namespace reso {

std::string to_string(CrossingClass c) {
  switch (c) {
    case CrossingClass::WidthCrossingEnergyAnticrossing:
      return "WIDTH_CROSSING_ENERGY_ANTICROSSING";
    case CrossingClass::JointCrossing:
      return "JOINT_CROSSING";
    case CrossingClass::EnergyCrossingWidthAnticrossing:
      return "ENERGY_CROSSING_WIDTH_ANTICROSSING";
    default:
      return "UNDETERMINED";
  }
}

Doublet doublet_at(const FixedParams& fixed, const UnfoldingCoefficients& coeffs,
                   const ControlPoint& star, const XiPoint& xi) {
  double r = std::hypot(xi.xi1, xi.xi2);
  if (r < 1e-14) {
    return Doublet{coeffs.k_d, coeffs.k_d, star, true};
  }
  // Seed at a small fraction of the ray where the contact approximant is
  // accurate, then continue outward.
  double seed_frac = std::min(1.0, 1e-3 / r);
  XiPoint xs{xi.xi1 * seed_frac, xi.xi2 * seed_frac};
  ControlPoint cs{star.d + xs.xi1, star.v3 + xs.xi2};
  PotentialProfile ps{fixed, cs};
  ContactK seed = contact_k(coeffs, xs);
  Doublet doub{polish_zero(ps, seed.k_plus), polish_zero(ps, seed.k_minus), cs, false};
  if (seed_frac >= 1.0) return doub;
  return continue_doublet(fixed, doub, ControlPoint{star.d + xi.xi1, star.v3 + xi.xi2});
}

std::vector<SurfaceSample> surface_scan(const FixedParams& fixed, const ExceptionalPoint& ep,
                                        const UnfoldingCoefficients& coeffs, double half_d,
                                        double half_v3, int n1, int n2, int threads) {
  if (n1 < 8 || n2 < 8) throw DomainError("surface_scan: grid must be at least 8x8");
  std::vector<SurfaceSample> grid(static_cast<size_t>(n1) * n2);

  auto run_cell = [&](int i, int j) {
    XiPoint xi{-half_d + 2.0 * half_d * i / (n1 - 1), -half_v3 + 2.0 * half_v3 * j / (n2 - 1)};
    SurfaceSample s;
    s.control = ControlPoint{ep.control_star.d + xi.xi1, ep.control_star.v3 + xi.xi2};
    ContactK hat = contact_k(coeffs, xi);
    s.khat1 = hat.k_plus;
    s.khat2 = hat.k_minus;
    try {
      Doublet d = doublet_at(fixed, coeffs, ep.control_star, xi);
      // Pair the exact zeros with the approximant branches.
      if (std::abs(d.k1 - hat.k_plus) + std::abs(d.k2 - hat.k_minus) >
          std::abs(d.k2 - hat.k_plus) + std::abs(d.k1 - hat.k_minus))
        std::swap(d.k1, d.k2);
      s.k1 = d.k1;
      s.k2 = d.k2;
      s.E1 = d.k1 * d.k1;
      s.E2 = d.k2 * d.k2;
      s.degenerate = d.degenerate;
    } catch (const std::runtime_error&) {
      s.ok = false;
    }
    grid[static_cast<size_t>(i) * n2 + j] = s;
  };

  if (threads <= 1) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) run_cell(i, j);
  } else {
    std::vector<std::future<void>> futs;
    int chunk = (n1 + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int lo = t * chunk, hi = std::min(n1, lo + chunk);
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (int i = lo; i < hi; ++i)
          for (int j = 0; j < n2; ++j) run_cell(i, j);
      }));
    }
    for (auto& f : futs) f.get();
  }
  return grid;
}

SectionResult section(const FixedParams& fixed, const ExceptionalPoint& ep,
                      const UnfoldingCoefficients& coeffs, double v3_fixed, double d_min,
                      double d_max, int n) {
  if (n < 3) throw DomainError("section: need at least 3 sweep points");
  SectionResult res;
  res.fixed_v3 = v3_fixed;
  res.sweep.reserve(n);

  double xi2 = v3_fixed - ep.control_star.v3;
  Doublet cur = doublet_at(fixed, coeffs, ep.control_star, XiPoint{d_min - ep.control_star.d, xi2});

  for (int i = 0; i < n; ++i) {
    double d = d_min + (d_max - d_min) * i / (n - 1);
    XiPoint xi{d - ep.control_star.d, xi2};
    double rho = std::hypot(xi.xi1, xi.xi2);
    if (rho < 1e-12) {
      // The sweep passes through the exceptional point itself.
      cur = Doublet{ep.k_d, ep.k_d, ControlPoint{d, v3_fixed}, true};
    } else {
      try {
        cur = continue_doublet(fixed, cur, ControlPoint{d, v3_fixed});
      } catch (const std::runtime_error&) {
        // Continuation stalls when the path grazes the EP; restart on the
        // far side by tracking outward from the EP along the ray to xi.
        cur = doublet_at(fixed, coeffs, ep.control_star, xi);
      }
    }
    ContactEnergy ce = contact_energy(coeffs, xi);

    SectionSample s;
    s.d = d;
    s.v3 = v3_fixed;
    s.E1 = cur.k1 * cur.k1;
    s.E2 = cur.k2 * cur.k2;
    s.Ehat1 = ce.e1;
    s.Ehat2 = ce.e2;
    s.dE = s.E1.real() - s.E2.real();
    s.dGamma = -2.0 * (s.E1.imag() - s.E2.imag());
    s.re_eps = ce.re_eps;
    s.im_eps = ce.im_eps;
    res.sweep.push_back(s);
  }

  // Crossing location: Ivec . xi = 0 along the sweep line.
  const auto& I = coeffs.Ivec;
  const auto& R = coeffs.Rvec;
  if (std::abs(I[0]) < 1e-300) {
    res.classification = CrossingClass::Undetermined;
    return res;
  }
  double xi1_c = -I[1] * xi2 / I[0];
  double d_c = ep.control_star.d + xi1_c;
  if (d_c < std::min(d_min, d_max) || d_c > std::max(d_min, d_max)) {
    res.classification = CrossingClass::Undetermined;
    return res;
  }
  res.crossing_d = d_c;
  double r_dot = R[0] * xi1_c + R[1] * xi2;
  res.r_dot_xi_c = r_dot;
  double scale = std::hypot(R[0], R[1]) * (std::abs(xi1_c) + std::abs(xi2));
  if (std::abs(r_dot) <= 1e-12 * std::max(scale, 1e-300))
    res.classification = CrossingClass::JointCrossing;
  else if (r_dot > 0)
    res.classification = CrossingClass::WidthCrossingEnergyAnticrossing;
  else
    res.classification = CrossingClass::EnergyCrossingWidthAnticrossing;
  return res;
}

TrajectoryResult pole_trajectory(const SectionResult& sec, const UnfoldingCoefficients& coeffs) {
  TrajectoryResult tr;
  tr.type = sec.classification;
  tr.points.reserve(sec.sweep.size() * 2);
  for (size_t i = 0; i < sec.sweep.size(); ++i) {
    tr.points.push_back({static_cast<int>(i), sec.sweep[i].E1, 'a'});
    tr.points.push_back({static_cast<int>(i), sec.sweep[i].E2, 'b'});
  }

  if (std::abs(coeffs.Ivec[0]) > 1e-300) tr.cot_phi1 = coeffs.Rvec[0] / coeffs.Ivec[0];
  double phi = std::atan2(coeffs.Ivec[0], coeffs.Rvec[0]);
  if (phi < 0) phi += 2.0 * std::numbers::pi;
  tr.asymptote_slope_1 = std::tan(0.5 * phi);
  tr.asymptote_slope_2 = -1.0 / std::tan(0.5 * phi);

  // Least-squares conic u^2 + B uv + C v^2 + D = 0 through the approximant
  // splitting (both branches contribute the same (u, v) up to sign).
  Eigen::MatrixXd A(sec.sweep.size(), 3);
  Eigen::VectorXd b(sec.sweep.size());
  double vspread = 0.0;
  for (size_t i = 0; i < sec.sweep.size(); ++i) {
    double u = sec.sweep[i].re_eps, v = sec.sweep[i].im_eps;
    A(i, 0) = u * v;
    A(i, 1) = v * v;
    A(i, 2) = 1.0;
    b(i) = -u * u;
    vspread = std::max(vspread, std::abs(v));
  }
  Eigen::Matrix3d gram = A.transpose() * A;
  if (gram.fullPivLu().rank() < 3 || vspread < 1e-14) {
    tr.degenerate_fit = true;  // collinear: critical section along an asymptote
    return tr;
  }
  Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b);
  tr.fit_B = sol(0);
  tr.fit_C = sol(1);
  tr.fit_D = sol(2);
  return tr;
}

LoopResult encircle(const FixedParams& fixed, const ExceptionalPoint& ep,
                    const UnfoldingCoefficients& coeffs, double radius, int windings,
                    int samples_per_turn, const XiPoint& center_offset) {
  if (samples_per_turn < 64) throw DomainError("encircle: samples_per_turn must be >= 64");
  if (windings < 1) throw DomainError("encircle: windings must be >= 1");

  // Ellipse semi-axes scaled so both coefficient terms c_i * xi_i
  // contribute comparably along the path.
  double cmin = std::min(std::abs(coeffs.c[0]), std::abs(coeffs.c[1]));
  double a1 = radius * cmin / std::abs(coeffs.c[0]);
  double a2 = radius * cmin / std::abs(coeffs.c[1]);

  auto xi_at = [&](double theta) {
    return XiPoint{center_offset.xi1 + a1 * std::cos(theta),
                   center_offset.xi2 + a2 * std::sin(theta)};
  };
  auto control_at = [&](double theta) {
    XiPoint xi = xi_at(theta);
    return ControlPoint{ep.control_star.d + xi.xi1, ep.control_star.v3 + xi.xi2};
  };

  LoopResult out;
  out.windings = windings;

  Doublet cur = doublet_at(fixed, coeffs, ep.control_star, xi_at(0.0));
  const Doublet start = cur;
  out.path.push_back({0.0, cur.control, cur.k1, cur.k2});

  int total = windings * samples_per_turn;
  for (int s = 1; s <= total; ++s) {
    double theta = 2.0 * std::numbers::pi * s / samples_per_turn;
    cur = continue_doublet(fixed, cur, control_at(theta));
    PotentialProfile p{fixed, cur.control};
    out.max_residual = std::max({out.max_residual, std::abs(jost_function(p, cur.k1)),
                                 std::abs(jost_function(p, cur.k2))});
    out.path.push_back({double(s) / samples_per_turn, cur.control, cur.k1, cur.k2});
  }

  double keep = std::abs(cur.k1 - start.k1) + std::abs(cur.k2 - start.k2);
  double swap = std::abs(cur.k1 - start.k2) + std::abs(cur.k2 - start.k1);
  if (std::min(keep, swap) > 1e-6)
    throw TrackingError("encircle: final zeros match neither initial ordering");
  out.permutation = keep <= swap ? LoopPermutation::Identity : LoopPermutation::Swap;
  return out;
}

}  // namespace reso
