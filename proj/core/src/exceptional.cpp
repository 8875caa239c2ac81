#include "reso/exceptional.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "reso/errors.hpp"

namespace reso {

namespace {

struct Residual4 {
  Cplx f, fp;
  double norm() const { return std::sqrt(std::norm(f) + std::norm(fp)); }
};

Residual4 residual_at(const FixedParams& fixed, const Eigen::Vector4d& x) {
  PotentialProfile p{fixed, ControlPoint{x[2], x[3]}};
  Cplx k{x[0], x[1]};
  auto d = jost_k_derivatives(p, k, 2);
  return {jost_function(p, k), d[0]};
}

/// Stage 1: Newton on the complex squared gap h(d, v3) = (k1 - k2)^2,
/// which Taylor-expands linearly in (d, v3) around the EP and therefore
/// converges from far away. Zeros are re-polished at every trial point.
Doublet gap_newton(const FixedParams& fixed, Doublet doublet, double gap_target) {
  auto polished = [&](const ControlPoint& c, Cplx s1, Cplx s2) -> Doublet {
    PotentialProfile p{fixed, c};
    return Doublet{polish_zero(p, s1), polish_zero(p, s2), c, false};
  };

  for (int it = 0; it < 60; ++it) {
    if (doublet.gap() < gap_target) return doublet;
    Cplx h = (doublet.k1 - doublet.k2) * (doublet.k1 - doublet.k2);
    const double eps = 1e-6;
    auto gap2 = [&](double dd, double vv) {
      Doublet t = polished(ControlPoint{dd, vv}, doublet.k1, doublet.k2);
      return (t.k1 - t.k2) * (t.k1 - t.k2);
    };
    ControlPoint c = doublet.control;
    Cplx hd = (gap2(c.d + eps, c.v3) - gap2(c.d - eps, c.v3)) / (2 * eps);
    Cplx hv = (gap2(c.d, c.v3 + eps) - gap2(c.d, c.v3 - eps)) / (2 * eps);

    Eigen::Matrix2d J;
    J << hd.real(), hv.real(), hd.imag(), hv.imag();
    if (std::abs(J.determinant()) < 1e-300)
      throw SingularJacobian("locate_ep: singular gap Jacobian (doublet not isolated?)");
    Eigen::Vector2d step = J.colPivHouseholderQr().solve(Eigen::Vector2d(h.real(), h.imag()));

    // Trust region: parameters move at most 0.3 per iteration.
    double scale = std::min(1.0, 0.3 / std::max(std::abs(step[0]), std::abs(step[1])));
    ControlPoint next{c.d - scale * step[0], c.v3 - scale * step[1]};
    doublet = polished(next, doublet.k1, doublet.k2);
  }
  throw NonConvergence("locate_ep: gap stage did not converge", doublet.midpoint(),
                       doublet.gap());
}

}  // namespace

ExceptionalPoint locate_ep(const FixedParams& fixed, const Doublet& initial_doublet) {
  Doublet near = initial_doublet;
  if (near.gap() > 1e-4) {
    try {
      near = gap_newton(fixed, initial_doublet, 1e-4);
    } catch (const DerivativeVanishes& e) {
      // Already close enough that polishing hits the double-zero regime.
      near.k1 = near.k2 = e.wave_number();
      near.degenerate = true;
    }
  }

  // Stage 2: damped Newton on (Re f, Im f, Re f', Im f') = 0.
  Eigen::Vector4d x(near.midpoint().real(), near.midpoint().imag(), near.control.d,
                    near.control.v3);
  Residual4 r = residual_at(fixed, x);
  Eigen::Vector4d best_x = x;
  double best_norm = r.norm();
  Cplx best_fpp{};

  for (int it = 0; it < 80; ++it) {
    PotentialProfile p{fixed, ControlPoint{x[2], x[3]}};
    Cplx k{x[0], x[1]};
    auto kder = jost_k_derivatives(p, k, 3);
    auto pder = jost_param_derivatives(p, k);
    Cplx f = jost_function(p, k);
    Cplx fp = kder[0], fpp = kder[1];

    double rn = std::sqrt(std::norm(f) + std::norm(fp));
    if (rn < best_norm) {
      best_norm = rn;
      best_x = x;
      best_fpp = fpp;
    }

    // Rows: (Re f, Im f, Re f', Im f'); columns: (Re k, Im k, d, v3).
    // Analyticity in k gives the (Re k, Im k) columns as (g, i g).
    Eigen::Matrix4d J;
    auto fill = [&](int row, Cplx dk, Cplx dd, Cplx dv) {
      Cplx idk = Cplx(0, 1) * dk;
      J(row, 0) = dk.real();
      J(row, 1) = idk.real();
      J(row, 2) = dd.real();
      J(row, 3) = dv.real();
      J(row + 1, 0) = dk.imag();
      J(row + 1, 1) = idk.imag();
      J(row + 1, 2) = dd.imag();
      J(row + 1, 3) = dv.imag();
    };
    fill(0, fp, pder.df_dd, pder.df_dv3);
    fill(2, fpp, pder.d2f_dd_dk, pder.d2f_dv3_dk);

    Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
    if (!lu.isInvertible())
      throw SingularJacobian("locate_ep: singular Newton Jacobian (doublet not isolated?)");
    Eigen::Vector4d step = lu.solve(Eigen::Vector4d(f.real(), f.imag(), fp.real(), fp.imag()));

    double lambda = 1.0;
    Eigen::Vector4d xn = x - step;
    for (int h = 0; h < 8; ++h) {
      Residual4 rt = residual_at(fixed, xn);
      if (rt.norm() < rn) break;
      lambda *= 0.5;
      xn = x - lambda * step;
    }
    if ((xn - x).norm() < 1e-16 * std::max(1.0, x.norm())) {
      x = xn;
      break;
    }
    x = xn;
  }

  Residual4 rfin = residual_at(fixed, x);
  if (rfin.norm() < best_norm) {
    best_norm = rfin.norm();
    best_x = x;
    PotentialProfile p{fixed, ControlPoint{x[2], x[3]}};
    best_fpp = jost_k_derivatives(p, Cplx(x[0], x[1]), 2)[1];
  }
  if (best_fpp == Cplx{}) {
    PotentialProfile p{fixed, ControlPoint{best_x[2], best_x[3]}};
    best_fpp = jost_k_derivatives(p, Cplx(best_x[0], best_x[1]), 2)[1];
  }

  PotentialProfile pb{fixed, ControlPoint{best_x[2], best_x[3]}};
  Cplx kb{best_x[0], best_x[1]};
  double tol = zero_threshold(pb, kb);
  Residual4 rb = residual_at(fixed, best_x);
  if (std::abs(rb.f) > tol || std::abs(rb.fp) > tol)
    throw NonConvergence("locate_ep: residuals above zero criterion", kb, best_norm);

  return ExceptionalPoint{ControlPoint{best_x[2], best_x[3]}, kb, std::abs(rb.f),
                          std::abs(rb.fp), best_fpp};
}

EpDiagnostics verify_ep(const FixedParams& fixed, const ExceptionalPoint& ep) {
  PotentialProfile p{fixed, ep.control_star};
  EpDiagnostics diag;
  auto d = jost_k_derivatives(p, ep.k_d, 2);
  diag.abs_f = std::abs(jost_function(p, ep.k_d));
  diag.abs_fprime = std::abs(d[0]);
  diag.abs_fsecond = std::abs(d[1]);
  diag.zero_count_circle = argument_principle_count_circle(p, ep.k_d, 1e-2);

  // Taylor around k_d: f ~ f(k_d) + (f''/2)(k - a)(k - b), so the residual
  // bounds the tuned gap by |k1 - k2|^2 = 8 |f(k_d)/f''|.
  diag.figure_of_merit =
      std::sqrt(8.0 * diag.abs_f / diag.abs_fsecond) / std::abs(ep.k_d);

  double tol = zero_threshold(p, ep.k_d);
  diag.is_ep = diag.abs_f < tol && diag.abs_fprime < tol && diag.abs_fsecond > 1e-6;
  return diag;
}

}  // namespace reso
