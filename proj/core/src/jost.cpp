#include "reso/jost.hpp"

#include <cmath>

namespace reso {

namespace {

template <class T>
detail::JostEval<T> eval_profile(const PotentialProfile& p, const T& k,
                                 detail::BranchSigns signs = {}) {
  return detail::jost_eval(p.fixed, T(p.control.d), T(p.control.v3), k, signs);
}

}  // namespace

LogDerivChain log_deriv_chain(const PotentialProfile& p, Cplx k) {
  if (std::abs(k) < 1e-280) throw ChainSingularity(4, k);  // alpha4 ~ 1/k
  auto e = eval_profile(p, k);
  LogDerivChain chain{e.alpha1, e.alpha2, e.alpha3, e.alpha4};
  for (Cplx a : {chain.alpha1, chain.alpha2, chain.alpha3, chain.alpha4}) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ChainSingularity(0, k);
  }
  return chain;
}

Cplx jost_function(const PotentialProfile& p, Cplx k) {
  return eval_profile(p, k).f;
}

Cplx jost_function_signed(const PotentialProfile& p, Cplx k, detail::BranchSigns signs) {
  return eval_profile(p, k, signs).f;
}

std::vector<Cplx> jost_k_derivatives(const PotentialProfile& p, Cplx k, int max_order) {
  if (max_order < 1 || max_order > 3)
    throw DomainError("jost_k_derivatives: max_order must be in {1,2,3}");
  std::vector<Cplx> out;
  if (max_order == 1) {
    auto e = eval_profile(p, seed1(k));
    out.push_back(e.f.d);
  } else if (max_order == 2) {
    auto e = eval_profile(p, seed2(k));
    out.push_back(e.f.v.d);
    out.push_back(e.f.d.d);
  } else {
    auto e = eval_profile(p, seed3(k));
    out.push_back(e.f.v.v.d);
    out.push_back(e.f.v.d.d);
    out.push_back(e.f.d.d.d);
  }
  return out;
}

std::pair<Cplx, Cplx> jost_value_and_derivative(const PotentialProfile& p, Cplx k) {
  auto e = eval_profile(p, seed1(k));
  return {e.f.v, e.f.d};
}

JostParamDerivatives jost_param_derivatives(const PotentialProfile& p, Cplx k) {
  // Outer jet differentiates the parameter, inner jet differentiates k.
  Jet2 kk{{k, Cplx(1.0)}, {Cplx(0.0), Cplx(0.0)}};

  Jet2 dd{{Cplx(p.control.d), Cplx(0.0)}, {Cplx(1.0), Cplx(0.0)}};
  Jet2 vv{{Cplx(p.control.v3), Cplx(0.0)}, {Cplx(0.0), Cplx(0.0)}};
  auto ed = detail::jost_eval(p.fixed, dd, vv, kk);

  Jet2 dd2{{Cplx(p.control.d), Cplx(0.0)}, {Cplx(0.0), Cplx(0.0)}};
  Jet2 vv2{{Cplx(p.control.v3), Cplx(0.0)}, {Cplx(1.0), Cplx(0.0)}};
  auto ev = detail::jost_eval(p.fixed, dd2, vv2, kk);

  return JostParamDerivatives{ed.f.d.v, ev.f.d.v, ed.f.d.d, ev.f.d.d};
}

Cplx regular_solution(const PotentialProfile& p, Cplx k, double r) {
  if (r < 0) throw DomainError("regular_solution: r must be nonnegative");
  const double r1 = p.fixed.r1, r2 = p.r2(), r3 = p.r3(), r4 = p.r4();

  // phi1(k, r) = sin(k r)/k everywhere in the inner well.
  auto phi1 = [&](double rr) { return detail::sinc_kr(k, rr); };
  if (r <= r1) return phi1(r);

  auto e = eval_profile(p, k);
  Cplx K2 = region_wave_number(p, 2, k);
  Cplx K3 = region_wave_number(p, 3, k);
  Cplx K4 = region_wave_number(p, 4, k);

  Cplx phi_r1 = phi1(r1);
  auto phi2 = [&](double rr) {
    return phi_r1 * (std::cosh(K2 * (rr - r1)) + e.alpha1 * std::sinh(K2 * (rr - r1)));
  };
  if (r <= r2) return phi2(r);

  Cplx phi_r2 = phi2(r2);
  auto phi3 = [&](double rr) {
    return phi_r2 * (std::cos(K3 * (rr - r2)) + e.alpha2 * std::sin(K3 * (rr - r2)));
  };
  if (r <= r3) return phi3(r);

  Cplx phi_r3 = phi3(r3);
  auto phi4 = [&](double rr) {
    return phi_r3 * (std::cosh(K4 * (rr - r3)) + e.alpha3 * std::sinh(K4 * (rr - r3)));
  };
  if (r <= r4) return phi4(r);

  Cplx phi_r4 = phi4(r4);
  return phi_r4 * (std::cos(k * (r - r4)) + e.alpha4 * std::sin(k * (r - r4)));
}

SMatrixValue s_matrix(const PotentialProfile& p, double k) {
  if (!(k > 0)) throw DomainError("s_matrix: k must be real positive");
  Cplx f = jost_function(p, Cplx(k));
  if (std::abs(f) < 1e-300) throw PoleOnAxis("s_matrix: Jost function vanishes on the real axis");
  Cplx s = std::conj(f) / f;
  return {s, 0.5 * std::arg(s)};
}

}  // namespace reso
