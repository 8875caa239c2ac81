#pragma once

#include <array>
#include <complex>
#include <vector>

#include "reso/errors.hpp"
#include "reso/jet.hpp"
#include "reso/potential.hpp"

namespace reso {

using ComplexK = Cplx;

struct LogDerivChain {
  Cplx alpha1, alpha2, alpha3, alpha4;
};

namespace detail {

/// Optional sign flips of the principal square roots K_i, used to exercise
/// the branch-insensitivity of the Jost function.
struct BranchSigns {
  double s2 = 1.0, s3 = 1.0, s4 = 1.0;
};

/// sin(k r)/k, with the removable singularity at k = 0 expanded in series.
template <class T>
T sinc_kr(const T& k, double r) {
  Cplx kv = scalar_value(k);
  if (std::abs(kv) * r > 1e-4) return sin(k * r) / k;
  T z2 = (k * k) * (r * r);
  return r * (1.0 - z2 * (1.0 / 6.0) + z2 * z2 * (1.0 / 120.0) - z2 * z2 * z2 * (1.0 / 5040.0));
}

template <class T>
struct JostEval {
  T alpha1, alpha2, alpha3, alpha4;
  T f;
};

/// Evaluates the logarithmic-derivative chain and the exact Jost function
/// f(-k; d, v3) for the double-barrier profile. Templated so that nested
/// jets deliver exact derivatives in k, d and v3.
template <class T>
JostEval<T> jost_eval(const FixedParams& fx, const T& d, const T& v3, const T& k,
                      BranchSigns signs = {}) {
  const T i_unit = lift<T>(Cplx(0.0, 1.0));

  T K2 = sqrt(T(fx.u2) - k * k) * signs.s2;
  T U3 = v3 * (fx.outer_well_sign * fx.u3_scale);
  T K3 = sqrt(k * k - U3) * signs.s3;
  T K4 = sqrt(T(fx.u4) - k * k) * signs.s4;

  // alpha1 = (k/K2) cot(k r1) written through sin(k r1)/k so that k = 0 is a
  // removable point of the product form.
  T s1 = sinc_kr(k, fx.r1);
  if (std::abs(scalar_value(K2) * scalar_value(s1)) < 1e-280)
    throw ChainSingularity(1, scalar_value(k));
  T a1 = cos(k * fx.r1) / (K2 * s1);

  T t2 = tanh(K2 * d);
  T den2 = 1.0 + a1 * t2;
  {
    Cplx dv = scalar_value(den2);
    if (std::abs(dv) < 1e-14 * (1.0 + std::abs(scalar_value(a1 * t2))))
      throw ChainSingularity(2, scalar_value(k));
  }
  T a2 = (K2 / K3) * (a1 + t2) / den2;

  T t3 = tan(K3 * fx.w3);
  T den3 = 1.0 + a2 * t3;
  {
    Cplx dv = scalar_value(den3);
    if (std::abs(dv) < 1e-14 * (1.0 + std::abs(scalar_value(a2 * t3))))
      throw ChainSingularity(3, scalar_value(k));
  }
  T a3 = (K3 / K4) * (a2 - t3) / den3;

  T t4 = tanh(K4 * fx.w4);
  T den4 = 1.0 + a3 * t4;
  {
    Cplx dv = scalar_value(den4);
    if (std::abs(dv) < 1e-14 * (1.0 + std::abs(scalar_value(a3 * t4))))
      throw ChainSingularity(4, scalar_value(k));
  }
  // alpha4 has an explicit 1/k; callers needing it at k = 0 are out of luck
  // and get the chain-singularity report instead.
  T a4;
  if (std::abs(scalar_value(k)) < 1e-280) {
    a4 = lift<T>(Cplx(0.0));  // placeholder; flagged by log_deriv_chain
  } else {
    a4 = (K4 / k) * (a3 + t4) / den4;
  }

  T C2 = cosh(K2 * d), S2 = sinh(K2 * d);
  T C3 = cos(K3 * fx.w3), S3 = sin(K3 * fx.w3);
  T C4 = cosh(K4 * fx.w4), S4 = sinh(K4 * fx.w4);

  double r4_minus_d = fx.r1 + fx.w3 + fx.w4;  // r4 = r1 + d + w3 + w4
  T phase = exp(i_unit * k * (d + r4_minus_d));

  // sin(k r1) * (K4/k)[...] regrouped as (sin(k r1)/k) * K4 [...] so the
  // whole product stays finite at k = 0.
  T f = s1 * (C2 + a1 * S2) * (C3 + a2 * S3) *
        (K4 * (S4 + a3 * C4) - i_unit * k * (C4 + a3 * S4)) * phase;

  return {a1, a2, a3, a4, f};
}

}  // namespace detail

/// Logarithmic derivatives (alpha1..alpha4) at the four discontinuities.
LogDerivChain log_deriv_chain(const PotentialProfile& p, Cplx k);

/// The exact Jost function f(-k; d, v3).
Cplx jost_function(const PotentialProfile& p, Cplx k);

/// Test hook: the Jost function with selected principal roots K_i negated.
Cplx jost_function_signed(const PotentialProfile& p, Cplx k, detail::BranchSigns signs);

/// d^n f / dk^n for n = 1..max_order (max_order <= 3), via nested jets.
std::vector<Cplx> jost_k_derivatives(const PotentialProfile& p, Cplx k, int max_order);

/// Value plus first k-derivative in one evaluation.
std::pair<Cplx, Cplx> jost_value_and_derivative(const PotentialProfile& p, Cplx k);

struct JostParamDerivatives {
  Cplx df_dd;
  Cplx df_dv3;
  Cplx d2f_dd_dk;
  Cplx d2f_dv3_dk;
};

/// Parameter partials at fixed k, and the mixed partials with k.
JostParamDerivatives jost_param_derivatives(const PotentialProfile& p, Cplx k);

/// The regular solution phi(k, r), normalized to unit slope at the origin.
Cplx regular_solution(const PotentialProfile& p, Cplx k, double r);

struct SMatrixValue {
  Cplx s;
  double phase_shift;  // delta(k) = arg(S)/2
};

/// S(k) = f(-k)^* / f(-k) for real k > 0.
SMatrixValue s_matrix(const PotentialProfile& p, double k);

}  // namespace reso
