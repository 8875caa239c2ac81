#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

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

TEST_CASE("branch_sqrt uses the cut along the positive real axis") {
  CHECK(std::abs(branch_sqrt(Cplx(4.0, 0.0)) - Cplx(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(branch_sqrt(Cplx(-4.0, 0.0)) - Cplx(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(branch_sqrt(Cplx(0.0, -1.0)) - std::polar(1.0, 0.75 * std::numbers::pi)) <
        1e-15);
  // Involution over the whole plane.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Cplx F(s(rng), s(rng));
    Cplx r = branch_sqrt(F);
    CHECK(std::abs(r * r - F) < 1e-12);
    CHECK(r.imag() >= -1e-15);  // arg in [0, 2pi) puts the root in the upper half plane
  }
}

TEST_CASE("coefficient structure and defining conditions") {
  const auto& f = fixture();
  CHECK(std::abs(f.u.E_d - f.ep.k_d * f.ep.k_d) < 1e-15);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(f.u.C[i] - 4.0 * f.u.k_d * f.u.k_d * f.u.c[i]) < 1e-14 * std::abs(f.u.C[i]));
    CHECK(f.u.Rvec[i] == f.u.C[i].real());
    CHECK(f.u.Ivec[i] == f.u.C[i].imag());
  }
  double norm = std::hypot(f.u.xi_hat0[0], f.u.xi_hat0[1]);
  CHECK(std::abs(norm - 1.0) < 1e-12);
  double rdot = f.u.Rvec[0] * f.u.xi_hat0[0] + f.u.Rvec[1] * f.u.xi_hat0[1];
  CHECK(rdot < 0.0);
}

TEST_CASE("coefficients reproduce exact doublets to first order") {
  const auto& f = fixture();
  // Compare the contact approximant against exact zeros on a small circle.
  const double rho = 1e-4;
  double worst_gap = 0.0, worst_mid = 0.0;
  for (int i = 0; i < 12; ++i) {
    double th = 2.0 * std::numbers::pi * i / 12.0;
    XiPoint xi{rho * std::cos(th), rho * std::sin(th)};
    Doublet ex = doublet_at(f.fixed, f.u, f.ep.control_star, xi);
    Cplx gap2_exact = (ex.k1 - ex.k2) * (ex.k1 - ex.k2);
    Cplx gap2_model = f.u.c_dot(xi);
    worst_gap = std::max(worst_gap, std::abs(gap2_exact - gap2_model) / std::abs(gap2_model));
    Cplx mid_model = f.u.k_d + f.u.d_dot(xi);
    worst_mid = std::max(worst_mid, std::abs(ex.midpoint() - mid_model) / rho);
  }
  CHECK(worst_gap < 1e-2);
  CHECK(worst_mid < 1e-2);
}

TEST_CASE("squared gap scales linearly along a ray") {
  const auto& f = fixture();
  XiPoint dir{0.6, 0.8};
  auto gap2 = [&](double rho) {
    XiPoint xi{rho * dir.xi1, rho * dir.xi2};
    Doublet ex = doublet_at(f.fixed, f.u, f.ep.control_star, xi);
    return std::abs((ex.k1 - ex.k2) * (ex.k1 - ex.k2));
  };
  double g1 = gap2(2e-4), g2 = gap2(1e-4);
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("contact_k branches merge at the EP and split as sqrt") {
  const auto& f = fixture();
  ContactK at0 = contact_k(f.u, XiPoint{0.0, 0.0});
  CHECK(std::abs(at0.k_plus - f.u.k_d) < 1e-15);
  CHECK(std::abs(at0.k_minus - f.u.k_d) < 1e-15);
  XiPoint xi{1e-4, 5e-5};
  ContactK ck = contact_k(f.u, xi);
  Cplx gap = ck.k_plus - ck.k_minus;
  CHECK(std::abs(gap * gap - f.u.c_dot(xi)) < 1e-12 * std::abs(f.u.c_dot(xi)) + 1e-18);
}

TEST_CASE("contact_energy split satisfies the modulus and sign identities") {
  const auto& f = fixture();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    double rho = 1e-2 * un(rng) + 1e-8;
    double th = 2.0 * std::numbers::pi * un(rng);
    XiPoint xi{rho * std::cos(th), rho * std::sin(th)};
    ContactEnergy ce = contact_energy(f.u, xi);
    double rx = f.u.R_dot(xi), ix = f.u.I_dot(xi);
    double mod = std::hypot(rx, ix);
    // |eps|^2 = sqrt((R.xi)^2 + (I.xi)^2) / 4
    CHECK(std::abs(std::norm(ce.eps_hat) - 0.25 * mod) < 1e-12 * (0.25 * mod) + 1e-300);
    CHECK(ce.re_eps * ce.re_eps + ce.im_eps * ce.im_eps ==
          doctest::Approx(0.25 * mod).epsilon(1e-10));
    // sign rule
    if (std::abs(ix) > 1e-14) {
      double prod = ce.re_eps * ce.im_eps;
      CHECK(prod * ix >= 0.0);
    }
    // the split reassembles eps_hat up to the overall two-branch sign
    Cplx eps(ce.re_eps, ce.im_eps);
    CHECK(std::min(std::abs(eps - ce.eps_hat), std::abs(eps + ce.eps_hat)) <
          1e-10 * std::abs(ce.eps_hat) + 1e-300);
    // e1 - e2 cancels at the scale of |E_d|, not |eps_hat|.
    CHECK(std::abs(ce.e1 - ce.e2 - 2.0 * ce.eps_hat) < 1e-14 * std::abs(f.u.E_d));
  }
}

TEST_CASE("cut lines extend in opposite directions") {
  const auto& f = fixture();
  CutLines cl = cut_lines(f.u);
  CHECK(cl.l_r_direction[0] == f.u.xi_hat0[0]);
  CHECK(cl.l_r_direction[1] == f.u.xi_hat0[1]);
  CHECK(cl.l_i_direction[0] == -f.u.xi_hat0[0]);
  CHECK(cl.l_i_direction[1] == -f.u.xi_hat0[1]);
}
