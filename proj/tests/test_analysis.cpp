#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "reso/analysis.hpp"

using namespace reso;

namespace {

struct EpFixture {
  FixedParams fixed = default_fixed_params();
  ExceptionalPoint ep;
  UnfoldingCoefficients u;

  EpFixture() {
    PotentialProfile p{fixed, ControlPoint{2.0, 1.04}};
    auto zeros = scan_window(p, KWindow{2.0, 2.4, -0.3, 0.0}, 64);
    REQUIRE(zeros.size() == 2);
    ep = locate_ep(fixed, Doublet{zeros[0], zeros[1], p.control, false});
    u = compute_coefficients(fixed, ep);
  }
};

const EpFixture& fixture() {
  static EpFixture f;
  return f;
}

}  // namespace

TEST_CASE("exact seams along the cut directions") {
  const auto& f = fixture();
  const double rho = 1e-3;
  XiPoint plus{rho * f.u.xi_hat0[0], rho * f.u.xi_hat0[1]};
  XiPoint minus{-plus.xi1, -plus.xi2};

  // The exact seams curve away from the tangent ray at second order; the
  // coincidence defect is bounded by ~1e-6 |k_d| at this radius.
  const double tol = 1e-6 * std::abs(f.ep.k_d);
  Doublet dp = doublet_at(f.fixed, f.u, f.ep.control_star, plus);
  CHECK(std::abs(dp.k1.real() - dp.k2.real()) < tol);
  CHECK(std::abs(dp.k1.imag() - dp.k2.imag()) > 1e-4);

  Doublet dm = doublet_at(f.fixed, f.u, f.ep.control_star, minus);
  CHECK(std::abs(dm.k1.imag() - dm.k2.imag()) < tol);
  CHECK(std::abs(dm.k1.real() - dm.k2.real()) > 1e-4);
}

TEST_CASE("surface scan covers the grid and matches the approximant near the EP") {
  const auto& f = fixture();
  auto grid = surface_scan(f.fixed, f.ep, f.u, 2e-3, 4e-4, 9, 9, 2);
  REQUIRE(grid.size() == 81);
  int ok_count = 0;
  double worst = 0.0;
  for (const auto& s : grid) {
    if (!s.ok) continue;
    ++ok_count;
    // Pairing: each exact zero sits near its approximant partner.
    worst = std::max({worst, std::abs(s.k1 - s.khat1), std::abs(s.k2 - s.khat2)});
  }
  CHECK(ok_count >= 79);  // the EP row itself may be flagged degenerate
  CHECK(worst < 2e-4);
}

TEST_CASE("section at the critical v3 is a joint crossing at d*") {
  const auto& f = fixture();
  double d0 = f.ep.control_star.d;
  SectionResult sec =
      section(f.fixed, f.ep, f.u, f.ep.control_star.v3, d0 - 0.02, d0 + 0.02, 81);
  CHECK(sec.classification == CrossingClass::JointCrossing);
  CHECK(std::abs(sec.crossing_d - d0) < 1e-6);
  CHECK(std::abs(sec.r_dot_xi_c) < 1e-9);
}

TEST_CASE("off-critical sections give the two opposite classes") {
  const auto& f = fixture();
  double d0 = f.ep.control_star.d;
  double v3s = f.ep.control_star.v3;

  SectionResult below =
      section(f.fixed, f.ep, f.u, 1.0381, d0 - 0.02, d0 + 0.02, 81);
  SectionResult above =
      section(f.fixed, f.ep, f.u, v3s + (v3s - 1.0381), d0 - 0.02, d0 + 0.02, 81);
  CHECK(below.classification == CrossingClass::WidthCrossingEnergyAnticrossing);
  CHECK(above.classification == CrossingClass::EnergyCrossingWidthAnticrossing);
  CHECK(below.r_dot_xi_c * above.r_dot_xi_c < 0.0);

  // Approximant obeys the sign rule at every sample.
  for (const auto& sec : {below, above}) {
    for (const auto& s : sec.sweep) {
      XiPoint xi{s.d - d0, s.v3 - v3s};
      double ix = f.u.I_dot(xi);
      double dE_hat = 2.0 * s.re_eps;
      double dG_hat = -4.0 * s.im_eps;
      if (std::abs(ix) > 1e-12) CHECK(dE_hat * dG_hat * (-ix) >= 0.0);
    }
  }
}

TEST_CASE("reversed sweep yields the same classification") {
  const auto& f = fixture();
  double d0 = f.ep.control_star.d;
  SectionResult fwd = section(f.fixed, f.ep, f.u, 1.0381, d0 - 0.02, d0 + 0.02, 41);
  SectionResult rev = section(f.fixed, f.ep, f.u, 1.0381, d0 + 0.02, d0 - 0.02, 41);
  CHECK(fwd.classification == rev.classification);
  CHECK(std::abs(fwd.crossing_d - rev.crossing_d) < 1e-9);
}

TEST_CASE("pole trajectory asymptotes follow the conic coefficients") {
  const auto& f = fixture();
  double d0 = f.ep.control_star.d;
  SectionResult sec = section(f.fixed, f.ep, f.u, 1.0381, d0 - 0.01, d0 + 0.01, 81);
  TrajectoryResult tr = pole_trajectory(sec, f.u);
  REQUIRE_FALSE(tr.points.empty());
  CHECK(tr.cot_phi1 == doctest::Approx(f.u.Rvec[0] / f.u.Ivec[0]));
  // Hyperbola branches: the fitted cross-term matches -2 cot(phi_1).
  if (!tr.degenerate_fit) {
    CHECK(tr.fit_B == doctest::Approx(-2.0 * tr.cot_phi1).epsilon(0.15));
  }
  // Asymptote slopes are the two half-angle directions.
  double phi = std::atan2(f.u.Ivec[0], f.u.Rvec[0]);
  if (phi < 0) phi += 2.0 * std::numbers::pi;
  CHECK(tr.asymptote_slope_1 == doctest::Approx(std::tan(0.5 * phi)));
  CHECK(tr.asymptote_slope_2 == doctest::Approx(-1.0 / std::tan(0.5 * phi)));
}

TEST_CASE("monodromy parity: odd loops swap, even loops restore") {
  const auto& f = fixture();
  for (int n = 1; n <= 2; ++n) {
    CAPTURE(n);
    LoopResult lr = encircle(f.fixed, f.ep, f.u, 5e-3, n, 128);
    CHECK(lr.windings == n);
    CHECK(lr.max_residual < 1e-6);
    CHECK(lr.permutation == (n % 2 ? LoopPermutation::Swap : LoopPermutation::Identity));
    REQUIRE_FALSE(lr.path.empty());
    CHECK(lr.path.front().turn_fraction == doctest::Approx(0.0));
    CHECK(lr.path.back().turn_fraction == doctest::Approx(double(n)));
  }
}

TEST_CASE("a loop that does not enclose the EP is trivial") {
  const auto& f = fixture();
  // Center the loop three radii away from the EP along xi_hat0.
  double r = 2e-3;
  XiPoint offset{3.0 * r * f.u.xi_hat0[0], 3.0 * r * f.u.xi_hat0[1]};
  LoopResult lr = encircle(f.fixed, f.ep, f.u, r, 1, 128, offset);
  CHECK(lr.permutation == LoopPermutation::Identity);
}
