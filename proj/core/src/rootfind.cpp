#include "reso/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reso/errors.hpp"

namespace reso {

namespace {

Cplx safe_jost(const PotentialProfile& p, Cplx k) {
  try {
    return jost_function(p, k);
  } catch (const ChainSingularity&) {
    // Removable in the product form; nudge off the singular point.
    return jost_function(p, k * (1.0 + 1e-12) + Cplx(0.0, 1e-14));
  }
}

}  // namespace

double zero_threshold(const PotentialProfile& p, Cplx k) {
  constexpr double tau_abs = 1e-10;
  constexpr double tau_rel = 1e-8;
  constexpr int n = 16;
  std::vector<double> mags;
  mags.reserve(n);
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * std::numbers::pi * i / n;
    mags.push_back(std::abs(safe_jost(p, k + 1e-2 * Cplx(std::cos(th), std::sin(th)))));
  }
  std::nth_element(mags.begin(), mags.begin() + n / 2, mags.end());
  return tau_abs + tau_rel * mags[n / 2];
}

bool is_zero(const PotentialProfile& p, Cplx k) {
  return std::abs(safe_jost(p, k)) < zero_threshold(p, k);
}

Cplx polish_zero(const PotentialProfile& p, Cplx guess, int max_steps) {
  Cplx k = guess;
  double tol = zero_threshold(p, guess);
  Cplx f;
  for (int step = 0; step < max_steps; ++step) {
    auto [fv, fp] = jost_value_and_derivative(p, k);
    f = fv;
    if (std::abs(f) < tol) return k;
    if (std::abs(fp) < 1e-300) throw DerivativeVanishes(k);
    Cplx dk = f / fp;
    // Near a double zero the Newton correction stalls; report it so the
    // caller can switch to the degeneracy solver.
    if (std::abs(dk) > 1e-9) {
      Cplx fpp = jost_k_derivatives(p, k, 2)[1];
      if (std::abs(fp) < 1e-12 * std::abs(fpp)) throw DerivativeVanishes(k);
    }
    k -= dk;
    if (std::abs(dk) < 1e-15 * std::max(1.0, std::abs(k))) {
      if (std::abs(safe_jost(p, k)) < tol) return k;
    }
  }
  if (std::abs(safe_jost(p, k)) < tol) return k;
  throw NonConvergence("polish_zero: no convergence after max steps", k,
                       std::abs(safe_jost(p, k)));
}

std::vector<Cplx> scan_window(const PotentialProfile& p, const KWindow& window, int grid_n) {
  if (grid_n < 16) throw DomainError("scan_window: grid_n must be >= 16");
  if (!window.valid()) throw DomainError("scan_window: invalid window");

  const int n = grid_n;
  std::vector<double> mag(static_cast<size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return mag[static_cast<size_t>(i) * n + j]; };
  auto knode = [&](int i, int j) {
    return Cplx(window.re_min + (window.re_max - window.re_min) * j / (n - 1),
                window.im_min + (window.im_max - window.im_min) * i / (n - 1));
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at(i, j) = std::abs(safe_jost(p, knode(i, j)));

  std::vector<Cplx> zeros;
  auto push_zero = [&](Cplx z) {
    if (!window.contains(z, 1e-9)) return;
    for (Cplx existing : zeros)
      if (std::abs(existing - z) < 1e-6) return;
    zeros.push_back(z);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double m = at(i, j);
      bool local_min = true;
      for (int di = -1; di <= 1 && local_min; ++di)
        for (int dj = -1; dj <= 1 && local_min; ++dj) {
          if (di == 0 && dj == 0) continue;
          int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
          if (at(ii, jj) < m) local_min = false;
        }
      if (!local_min) continue;
      try {
        Cplx z = polish_zero(p, knode(i, j));
        if (is_zero(p, z)) push_zero(z);
      } catch (const NonConvergence&) {
      } catch (const DerivativeVanishes&) {
      }
    }
  }
  std::sort(zeros.begin(), zeros.end(),
            [](Cplx a, Cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return zeros;
}

namespace {

int winding_over_path(const PotentialProfile& p, const std::vector<Cplx>& nodes) {
  // Accumulates the trapezoid integral of f'/f; the result is rounded to
  // the nearest integer and sanity-checked.
  Cplx integral = 0.0;
  std::vector<Cplx> ratio(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto [f, fp] = jost_value_and_derivative(p, nodes[i]);
    if (std::abs(f) < 1e-300)
      throw TrackingError("argument principle: contour passes through a zero");
    ratio[i] = fp / f;
  }
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    integral += 0.5 * (ratio[i] + ratio[i + 1]) * (nodes[i + 1] - nodes[i]);
  double count = (integral / Cplx(0.0, 2.0 * std::numbers::pi)).real();
  double rounded = std::round(count);
  if (std::abs(count - rounded) > 0.25)
    throw TrackingError("argument principle: winding number far from integer");
  return static_cast<int>(rounded);
}

}  // namespace

int argument_principle_count(const PotentialProfile& p, const KWindow& w, int n_points) {
  std::vector<Cplx> nodes;
  nodes.reserve(n_points + 1);
  int per_side = n_points / 4;
  auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(lerp(w.re_min, w.re_max, double(i) / per_side), w.im_min);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(w.re_max, lerp(w.im_min, w.im_max, double(i) / per_side));
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(lerp(w.re_max, w.re_min, double(i) / per_side), w.im_max);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(w.re_min, lerp(w.im_max, w.im_min, double(i) / per_side));
  nodes.push_back(nodes.front());
  return winding_over_path(p, nodes);
}

int argument_principle_count_circle(const PotentialProfile& p, Cplx center, double radius,
                                    int n_points) {
  std::vector<Cplx> nodes;
  nodes.reserve(n_points + 1);
  for (int i = 0; i <= n_points; ++i) {
    double th = 2.0 * std::numbers::pi * i / n_points;
    nodes.push_back(center + radius * Cplx(std::cos(th), std::sin(th)));
  }
  return winding_over_path(p, nodes);
}

Doublet continue_doublet(const FixedParams& fixed, const Doublet& from, const ControlPoint& to) {
  ControlPoint c0 = from.control;
  Cplx k1 = from.k1, k2 = from.k2;
  double t = 0.0, step = 1.0;
  int halvings = 0;

  while (t < 1.0) {
    double tn = std::min(1.0, t + step);
    ControlPoint trial{c0.d + (to.d - c0.d) * tn, c0.v3 + (to.v3 - c0.v3) * tn};
    PotentialProfile p{fixed, trial};
    bool ok = true;
    Cplx n1{}, n2{};
    try {
      n1 = polish_zero(p, k1);
      n2 = polish_zero(p, k2);
    } catch (const std::runtime_error&) {
      ok = false;
    }
    double sep = std::abs(k1 - k2);
    if (ok && sep > 0) {
      // Identity by continuity: each zero must move less than a quarter of
      // the current separation, and the matched pair must stay resolvable.
      double move = std::max(std::abs(n1 - k1), std::abs(n2 - k2));
      double polish_tol = 1e-9;
      if (move > 0.25 * sep) ok = false;
      if (std::abs(n1 - n2) < 2.0 * polish_tol) {
        // Degenerate sample: the path runs into the exceptional point.
        if (step < 1e-10) {
          Doublet d{n1, n2, trial, true};
          return d;
        }
        ok = false;
      }
    }
    if (!ok) {
      step *= 0.5;
      if (++halvings > 60 || step < 1e-12)
        throw TrackingError("continue_doublet: step underflow (path may cross the EP)");
      continue;
    }
    k1 = n1;
    k2 = n2;
    t = tn;
    step = std::min(1.0, step * 2.0);
  }
  return Doublet{k1, k2, to, false};
}

std::vector<Doublet> track_doublet(const FixedParams& fixed, std::span<const ControlPoint> path,
                                   const Doublet& initial) {
  std::vector<Doublet> out;
  out.reserve(path.size());
  Doublet cur = initial;
  for (const ControlPoint& cp : path) {
    cur = continue_doublet(fixed, cur, cp);
    out.push_back(cur);
    if (cur.degenerate) break;
  }
  return out;
}

}  // namespace reso
