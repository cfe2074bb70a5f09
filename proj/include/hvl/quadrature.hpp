// Quadrature engines.
//
// Circle means of smooth integrands use the classical uniform trapezoid
// (offset half a bin so parametrized singular directions never land on a
// node) with resolution doubling.  Everything with boundary peaks or
// log-singular directions goes through feature-graded dyadic segments, each
// handled by an adaptive Gauss-Kronrod 7-15 rule: a Poisson peak of width
// 1e-80 costs ~270 segments instead of an impossible uniform grid.

#ifndef HVL_QUADRATURE_HPP
#define HVL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hvl/analytic.hpp"
#include "hvl/core.hpp"

namespace hvl {

/// Numeric value with the resolution that produced it and the observed
/// error proxy (difference of successive refinements / rule estimates).
struct NormEstimate {
  double value = 0.0;
  std::int64_t resolution = 0;
  double error_bound = 0.0;
  bool converged = true;
};

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-15;
  int refine = 0;                // extra dyadic pre-splits (replay doubling)
  int max_bisect_depth = 26;     // adaptive recursion cap per segment
  std::int64_t min_arc_nodes = 256;
  int m0 = 64;                   // initial sample count for doubling means
  std::int64_t sample_cap = std::int64_t(1) << 21;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  std::int64_t evals = 0;
  bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (as in QUADPACK's dqk15).
inline constexpr double gk_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
IntegralResult gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = gk_wk[7] * f0;
  double g7 = gk_wg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * gk_x[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k15 += gk_wk[i] * fsum;
    if (i % 2 == 1) g7 += gk_wg[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  double err = std::abs(k15 - g7);
  err = std::min(std::pow(200.0 * err, 1.5), 200.0 * err);
  return {k15, err, 15, true};
}

/// The 15 Kronrod nodes and weights on [a, b], for callers that cache
/// integrand values on a fixed deterministic grid.
inline void gk15_nodes(double a, double b, double* xs, double* ws) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  xs[0] = mid;
  ws[0] = gk_wk[7] * half;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * gk_x[i];
    xs[1 + 2 * i] = mid - dx;
    xs[2 + 2 * i] = mid + dx;
    ws[1 + 2 * i] = ws[2 + 2 * i] = gk_wk[i] * half;
  }
}

template <typename F>
void integrate_adaptive(F&& f, double a, double b, double tol, int depth,
                        IntegralResult& acc) {
  const IntegralResult r = gk15(f, a, b);
  acc.evals += r.evals;
  if (r.error <= tol || depth <= 0 || b - a < 1e-15 * (std::abs(a) + std::abs(b))) {
    acc.value += r.value;
    acc.error += r.error;
    if (r.error > tol && depth <= 0) acc.converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_adaptive(f, a, mid, 0.5 * tol, depth - 1, acc);
  integrate_adaptive(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Geometric breakpoints of [lo, hi] graded toward each feature angle.
/// Peaks ladder from scale/16 outward with ratio 4 (GK15 resolves one
/// geometric shell of these kernels to near machine precision); true
/// singularities (scale == 0) ladder 1e-12 below the finest peak scale,
/// leaving an unresolved log-power mass of order 1e-10 relative.
inline std::vector<double> graded_breakpoints(double lo, double hi,
                                              const std::vector<AngularFeature>& feats,
                                              int refine = 0) {
  const double width = hi - lo;
  std::vector<double> pts{lo, hi};

  double ref_scale = width;
  for (const AngularFeature& ft : feats)
    if (ft.scale > 0.0) ref_scale = std::min(ref_scale, ft.scale);

  const double mid = 0.5 * (lo + hi);
  for (const AngularFeature& ft : feats) {
    const double c = mid + wrap_angle(ft.angle - mid);
    const double d0 = std::max(ft.scale > 0.0 ? ft.scale / 16.0 : ref_scale * 1e-12, min_gap);
    if (c > lo && c < hi) pts.push_back(c);
    for (int side = -1; side <= 1; side += 2) {
      for (double rho = d0; rho < 2.0 * width; rho *= 4.0) {
        const double p = c + side * rho;
        if (p > lo && p < hi) pts.push_back(p);
        if ((side < 0 && p < lo) || (side > 0 && p > hi)) break;
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (refine > 0) {
    std::vector<double> out;
    out.reserve(pts.size() << refine);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const int parts = 1 << refine;
      for (int j = 0; j < parts; ++j)
        out.push_back(pts[i] + (pts[i + 1] - pts[i]) * double(j) / double(parts));
    }
    out.push_back(pts.back());
    pts = std::move(out);
  }
  return pts;
}

/// Integral of a real integrand over the angle interval [lo, hi] with
/// feature-graded segments; two passes, the second one polishing segments
/// whose Kronrod estimate exceeds their share of the budget.
template <typename F>
IntegralResult integrate_graded(F&& f, double lo, double hi,
                                const std::vector<AngularFeature>& feats,
                                const QuadratureConfig& cfg = {}) {
  if (!(hi > lo)) return {0.0, 0.0, 0, true};
  std::vector<double> pts = graded_breakpoints(lo, hi, feats, cfg.refine);
  // honor the minimum node density
  while (std::int64_t(pts.size() - 1) * 15 < cfg.min_arc_nodes) {
    std::vector<double> out;
    out.reserve(pts.size() * 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      out.push_back(pts[i]);
      out.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    out.push_back(pts.back());
    pts = std::move(out);
  }

  const std::size_t nseg = pts.size() - 1;
  std::vector<IntegralResult> seg(nseg);
  parallel_for(nseg, [&](std::size_t i) { seg[i] = detail::gk15(f, pts[i], pts[i + 1]); });

  IntegralResult total;
  for (const IntegralResult& s : seg) {
    total.value += s.value;
    total.evals += s.evals;
  }
  const double budget = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value));
  const double per_seg = budget / double(nseg);

  std::vector<std::size_t> redo;
  for (std::size_t i = 0; i < nseg; ++i)
    if (seg[i].error > per_seg) redo.push_back(i);
  parallel_for(redo.size(), [&](std::size_t k) {
    const std::size_t i = redo[k];
    IntegralResult acc;
    detail::integrate_adaptive(f, pts[i], pts[i + 1], per_seg, cfg.max_bisect_depth, acc);
    seg[i] = acc;
  });

  total = {};
  for (const IntegralResult& s : seg) {
    total.value += s.value;
    total.error += s.error;
    total.evals += s.evals;
    total.converged = total.converged && s.converged;
  }
  return total;
}

/// Mean of f over the full circle by offset-trapezoid doubling.  The offset
/// grid theta_k = 2 pi (k + 1/2) / M never contains an axis-aligned
/// singular direction, and for periodic integrands the rule is spectral.
template <typename F>
NormEstimate circle_mean_doubling(F&& f, const QuadratureConfig& cfg = {}) {
  auto mean_at = [&](std::int64_t m) {
    std::vector<double> slot(static_cast<std::size_t>(m));
    parallel_for(std::size_t(m), [&](std::size_t k) {
      slot[k] = f(two_pi * (double(k) + 0.5) / double(m));
    });
    double s = 0.0;
    for (double v : slot) s += v;
    return s / double(m);
  };
  std::int64_t m = std::max<std::int64_t>(cfg.m0, 4) << cfg.refine;
  double prev = mean_at(m);
  double last_err = HUGE_VAL;
  while (2 * m <= cfg.sample_cap) {
    const double cur = mean_at(2 * m);
    last_err = std::abs(cur - prev);
    m *= 2;
    prev = cur;
    if (last_err <= cfg.rel_tol * std::max(std::abs(cur), 1e-30) + cfg.abs_tol)
      return {cur, m, last_err, true};
  }
  // cap reached: the stall is reported, never silently accepted
  return {prev, m, last_err, false};
}

// ---------------------------------------------------------------------------
// Radial integration for the Volterra quadrature backend: integrals over
// s in [0, 1] along a ray, written in the gap variable u = 1 - s with
// dyadic panels graded toward u = 0 where the integrand develops its layer.
// ---------------------------------------------------------------------------

struct ComplexIntegral {
  cd value{0.0, 0.0};
  double error = 0.0;
  std::int64_t evals = 0;
  bool converged = true;
};

namespace detail {

template <typename F>
ComplexIntegral gk15_complex(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cd f0 = f(mid);
  cd k15 = gk_wk[7] * f0;
  cd g7 = gk_wg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * gk_x[i];
    const cd fsum = f(mid - dx) + f(mid + dx);
    k15 += gk_wk[i] * fsum;
    if (i % 2 == 1) g7 += gk_wg[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  double err = std::abs(k15 - g7);
  err = std::min(std::pow(200.0 * err, 1.5), 200.0 * err);
  return {k15, err, 15, true};
}

template <typename F>
void radial_adaptive(F&& f, double a, double b, double tol, int depth, ComplexIntegral& acc) {
  const ComplexIntegral r = gk15_complex(f, a, b);
  acc.evals += r.evals;
  if (r.error <= tol || depth <= 0) {
    acc.value += r.value;
    acc.error += r.error;
    if (r.error > tol) acc.converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  radial_adaptive(f, a, mid, 0.5 * tol, depth - 1, acc);
  radial_adaptive(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Integral of f(u) over u in [0, 1]; `layer_scale` is the gap size of the
/// finest structure near u = 0 (distance of the ray endpoint to the nearest
/// kernel zero).  Geometric panels descend from 1 to layer_scale/32.
/// `rel_tol` is relative to the accumulated L1 panel mass — the integrand
/// magnitudes span hundreds of orders along one ray, so absolute budgets
/// are meaningless here.
template <typename F>
ComplexIntegral integrate_radial_layer(F&& f, double layer_scale, double rel_tol,
                                       int refine = 0) {
  const double u_floor = std::max(std::min(layer_scale, 1.0) / 32.0, min_gap);
  std::vector<std::pair<double, double>> panels;
  double hi = 1.0;
  while (hi > u_floor) {
    const double lo = std::max(0.25 * hi, u_floor);
    panels.emplace_back(lo, hi);
    hi = lo;
  }
  panels.emplace_back(0.0, u_floor);
  if (refine > 0) {
    std::vector<std::pair<double, double>> out;
    for (auto [lo2, hi2] : panels) {
      const int parts = 1 << refine;
      for (int j = parts - 1; j >= 0; --j) {
        const double a = lo2 + (hi2 - lo2) * double(j) / double(parts);
        const double b = lo2 + (hi2 - lo2) * double(j + 1) / double(parts);
        out.emplace_back(a, b);
      }
    }
    panels = std::move(out);
  }

  std::vector<ComplexIntegral> part(panels.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    part[i] = detail::gk15_complex(f, panels[i].first, panels[i].second);
    l1 += std::abs(part[i].value);
  }
  const double per_panel = rel_tol * std::max(l1, 1e-300) / double(panels.size());

  ComplexIntegral acc;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (part[i].error > per_panel) {
      ComplexIntegral polished;
      detail::radial_adaptive(f, panels[i].first, panels[i].second, per_panel, 12, polished);
      acc.value += polished.value;
      acc.error += polished.error;
      acc.evals += part[i].evals + polished.evals;
      acc.converged = acc.converged && polished.converged;
    } else {
      acc.value += part[i].value;
      acc.error += part[i].error;
      acc.evals += part[i].evals;
    }
  }
  return acc;
}

}  // namespace hvl

#endif  // HVL_QUADRATURE_HPP
