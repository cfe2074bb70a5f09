// Boundary norms and seminorms: H^p circle means, arc-restricted p-masses,
// BMOA / VMOA / Bloch / LMOA seminorms and plain little-lp norms.
//
// Mobius-composed means are computed in the image variable,
//   || g o sigma_a - g(a) ||_q^q = int |g(w) - g(a)|^q P_a(w) dm(w),
// which keeps every feature of the integrand at a known angle and makes the
// graded quadrature applicable arbitrarily close to the boundary.

#ifndef HVL_NORMS_HPP
#define HVL_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hvl/analytic.hpp"
#include "hvl/core.hpp"
#include "hvl/fft.hpp"
#include "hvl/quadrature.hpp"

namespace hvl {

/// Boundary arc {e^{i theta} : |theta - center| < half_width} (mod 2 pi).
struct Arc {
  double center = 0.0;
  double half_width = pi;

  Arc(double c, double hw) : center(wrap_angle(c)), half_width(hw) {
    if (!(hw > 0.0) || hw > pi)
      throw std::invalid_argument("Arc: half_width must lie in (0, pi]");
  }

  static Arc full_circle() { return Arc(0.0, pi); }

  bool contains(double theta) const { return angle_dist(theta, center) < half_width; }

  bool is_full() const { return half_width >= pi; }

  /// Normalized measure |A| / (2 pi) * 2 = half_width / pi.
  double measure() const { return half_width / pi; }

  /// Complementary arc; empty (nullopt) when this arc is the whole circle.
  std::optional<Arc> complement() const {
    if (is_full()) return std::nullopt;
    return Arc(center + pi, pi - half_width);
  }
};

inline double lp_norm(const std::vector<cd>& alpha, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0;
  for (const cd& x : alpha) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

namespace detail {

inline bool is_pow2(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

/// Samples of a truncated series on the plain uniform grid 2 pi k / M at
/// radius r; FFT when the degree makes Horner uneconomical.
inline std::vector<cd> series_circle_samples(const AnalyticFn& f, double r, std::int64_t m) {
  const int deg = f.degree();
  std::vector<cd> vals(static_cast<std::size_t>(m));
  const bool use_fft = m >= deg + 1 && std::int64_t(deg + 1) * m > (1 << 18);
  if (use_fft) {
    std::vector<cd> padded(std::size_t(m), cd{0.0, 0.0});
    double rn = 1.0;
    for (int n = 0; n <= deg; ++n) {
      padded[std::size_t(n)] = f.coeffs[std::size_t(n)] * rn;
      rn *= r;
    }
    fft_inplace(padded);
    return padded;
  }
  parallel_for(std::size_t(m), [&](std::size_t k) {
    vals[k] = f.eval_series(r * expi(two_pi * double(k) / double(m)));
  });
  return vals;
}

/// Doubling circle p-mean of a truncated series at fixed radius.
inline NormEstimate series_circle_pmass(const AnalyticFn& f, double p, double r,
                                        const QuadratureConfig& cfg) {
  auto mean_at = [&](std::int64_t m) {
    const std::vector<cd> vals = series_circle_samples(f, r, m);
    double s = 0.0;
    for (const cd& v : vals) s += std::pow(std::abs(v), p);
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
  return {prev, m, last_err, false};
}

inline std::vector<AngularFeature> features_of(const AnalyticFn& f) {
  std::vector<AngularFeature> feats;
  if (f.closed) {
    feats = f.closed->features;
    for (double s : f.closed->singular_angles) feats.push_back({s, 0.0});
  }
  return feats;
}

}  // namespace detail

struct HardyNormOptions {
  std::int64_t samples = 64;             // initial M, power of two
  std::optional<double> radius;          // default: largest valid radius
  QuadratureConfig quad{};
  std::vector<AngularFeature> hints{};   // extra grading hints
};

/// H^p circle mean ((1/M) sum |f|^p)^{1/p}, doubling-stabilized; the sup
/// over radii is realized at the largest valid radius since the means are
/// nondecreasing in r.
inline NormEstimate hardy_norm(const AnalyticFn& f, double p, HardyNormOptions opts = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("hardy_norm: p must be >= 1");
  if (opts.samples < 64 || !detail::is_pow2(opts.samples))
    throw std::invalid_argument("hardy_norm: samples must be a power of two >= 64");
  QuadratureConfig cfg = opts.quad;
  cfg.m0 = int(opts.samples);

  const bool boundary_ok = f.closed.has_value() || f.summable_tail;
  double r = opts.radius.value_or(boundary_ok ? 1.0
                                              : std::min(f.series_radius, 1.0 - 1e-12));
  if (r > 1.0 || r <= 0.0) throw std::invalid_argument("hardy_norm: radius must be in (0, 1]");
  if (r >= 1.0 && !boundary_ok)
    throw std::domain_error("hardy_norm: r = 1 requires a closed form or summable tail");
  if (!f.closed && !f.series_valid_at(r))
    throw std::domain_error("hardy_norm: series backend beyond its validity radius");

  NormEstimate mass;
  std::vector<AngularFeature> feats = detail::features_of(f);
  feats.insert(feats.end(), opts.hints.begin(), opts.hints.end());

  if (f.closed && !feats.empty()) {
    const double gap = 1.0 - r;
    auto integrand = [&](double theta) {
      return std::pow(std::abs(f.eval_closed(RadialPoint{gap, theta})), p);
    };
    const IntegralResult ir = integrate_graded(integrand, -pi, pi, feats, cfg);
    mass = {ir.value / two_pi, ir.evals, ir.error / two_pi, ir.converged};
  } else if (f.closed) {
    const double gap = 1.0 - r;
    mass = circle_mean_doubling(
        [&](double theta) { return std::pow(std::abs(f.eval_closed(RadialPoint{gap, theta})), p); }, cfg);
  } else {
    mass = detail::series_circle_pmass(f, p, r, cfg);
  }

  NormEstimate out = mass;
  out.value = std::pow(std::max(mass.value, 0.0), 1.0 / p);
  out.error_bound = std::isfinite(mass.error_bound) && mass.value > 0.0
                        ? out.value * mass.error_bound / (p * std::max(mass.value, 1e-300))
                        : mass.error_bound;
  return out;
}

struct ArcIntegralOptions {
  QuadratureConfig quad{};
  std::vector<AngularFeature> hints{};
};

/// Integral over an angular window of a raw boundary profile F(theta) >= 0
/// against normalized arclength measure.  Shared by everything that
/// integrates |T_g f|^p along the circle.
template <typename F>
NormEstimate arc_mass_of(F&& profile, const Arc& arc, const std::vector<AngularFeature>& feats,
                         const QuadratureConfig& cfg = {}) {
  if (arc.half_width < 1e-300)
    throw std::invalid_argument("arc integral: arc narrower than the resolution cap");
  const double lo = arc.center - arc.half_width;
  const double hi = arc.center + arc.half_width;
  const IntegralResult ir = integrate_graded(profile, lo, hi, feats, cfg);
  return {ir.value / two_pi, ir.evals, ir.error / two_pi, ir.converged};
}

/// p-mass of f over an arc (NOT its p-th root), boundary values from the
/// closed form when available.
inline NormEstimate arc_integral(const AnalyticFn& f, double p, const Arc& arc,
                                 ArcIntegralOptions opts = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("arc_integral: p must be >= 1");
  if (!f.closed && !f.summable_tail)
    throw std::domain_error("arc_integral: boundary values need a closed form or summable tail");
  std::vector<AngularFeature> feats = detail::features_of(f);
  feats.insert(feats.end(), opts.hints.begin(), opts.hints.end());
  auto profile = [&](double theta) { return std::pow(std::abs(f.eval(RadialPoint{0.0, theta})), p); };
  return arc_mass_of(profile, arc, feats, opts.quad);
}

// ---------------------------------------------------------------------------
// Mobius-composed q-means and the seminorm family built on them.
// ---------------------------------------------------------------------------

/// || g o sigma_a - g(a) ||_q via the Poisson-Jacobian change of variables.
/// Valid for any q > 0 (the Aleman-Cima numerators use q < 1).
inline NormEstimate compose_mean(const AnalyticFn& g, const DiscPoint& a, double q = 2.0,
                                 QuadratureConfig cfg = {}) {
  if (!(q > 0.0)) throw std::invalid_argument("compose_mean: q must be > 0");
  if (!g.closed && !g.summable_tail)
    throw std::domain_error("compose_mean: boundary values need a closed form or summable tail");
  const cd ga = g.eval(a.radial());
  std::vector<AngularFeature> feats = detail::features_of(g);
  feats.push_back({a.phi, a.gap});
  auto integrand = [&](double theta) {
    return std::pow(std::abs(g.eval(RadialPoint{0.0, theta}) - ga), q) * poisson_kernel(a, theta);
  };
  const IntegralResult ir =
      integrate_graded(integrand, a.phi - pi, a.phi + pi, feats, cfg);
  const double mass = std::max(ir.value / two_pi, 0.0);
  return {std::pow(mass, 1.0 / q), ir.evals, ir.error / two_pi, ir.converged};
}

/// Same quantity via direct composition on the source circle; used as the
/// cross-check route for moderate a.
inline NormEstimate compose_mean_direct(const AnalyticFn& g, const DiscPoint& a, double q = 2.0,
                                        QuadratureConfig cfg = {}) {
  NormEstimate mean = circle_mean_doubling(
      [&](double theta) { return std::pow(std::abs(compose_with_mobius(g, a, theta)), q); },
      cfg);
  mean.value = std::pow(std::max(mean.value, 0.0), 1.0 / q);
  return mean;
}

/// 8 rays x dyadic radii 1 - 2^{-j}, j = 1..depth.
inline std::vector<DiscPoint> standard_grid(int rays = 8, int depth = 10) {
  if (rays < 1 || depth < 1) throw std::invalid_argument("standard_grid: bad shape");
  std::vector<DiscPoint> grid;
  grid.reserve(std::size_t(rays) * std::size_t(depth));
  double gap = 1.0;
  for (int j = 1; j <= depth; ++j) {
    gap *= 0.5;
    for (int m = 0; m < rays; ++m)
      grid.emplace_back(gap, two_pi * double(m) / double(rays));
  }
  return grid;
}

/// Per-point composed means over a grid; the raw material for the BMOA and
/// LMOA estimates and for the VMOA defect schedule.
inline std::vector<NormEstimate> compose_profile(const AnalyticFn& g,
                                                 const std::vector<DiscPoint>& grid,
                                                 double q = 2.0, QuadratureConfig cfg = {}) {
  std::vector<NormEstimate> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = compose_mean(g, grid[i], q, cfg);
  return out;
}

/// Grid maximum of || g o sigma_a - g(a) ||_q.
inline NormEstimate bmoa_seminorm(const AnalyticFn& g, const std::vector<DiscPoint>& grid,
                                  double q = 2.0, QuadratureConfig cfg = {}) {
  if (grid.empty()) throw std::invalid_argument("bmoa_seminorm: empty grid");
  const std::vector<NormEstimate> prof = compose_profile(g, grid, q, cfg);
  NormEstimate best = prof.front();
  std::int64_t evals = 0;
  for (const NormEstimate& e : prof) {
    evals += e.resolution;
    if (e.value > best.value) best = e;
  }
  best.resolution = evals;
  return best;
}

/// d_j = max over rays of the composed mean at |a| = r_j; the caller reads
/// the tail of the schedule.
inline std::vector<double> vmoa_defect(const AnalyticFn& g, const std::vector<double>& radii,
                                       double q = 2.0, int rays = 8,
                                       QuadratureConfig cfg = {}) {
  std::vector<double> out;
  out.reserve(radii.size());
  double prev = -1.0;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0 && r > prev))
      throw std::invalid_argument("vmoa_defect: radii must increase inside (0, 1)");
    prev = r;
    double worst = 0.0;
    for (int m = 0; m < rays; ++m) {
      const DiscPoint a(1.0 - r, two_pi * double(m) / double(rays));
      worst = std::max(worst, compose_mean(g, a, q, cfg).value);
    }
    out.push_back(worst);
  }
  return out;
}

/// Grid maximum of (1 - |z|^2) |g'(z)|.
inline NormEstimate bloch_seminorm(const AnalyticFn& g, const std::vector<DiscPoint>& grid) {
  if (grid.empty()) throw std::invalid_argument("bloch_seminorm: empty grid");
  const AnalyticFn gp = derivative(g);
  double best = 0.0;
  for (const DiscPoint& z : grid)
    best = std::max(best, z.one_minus_abs2() * std::abs(gp.eval(z.radial())));
  return {best, std::int64_t(grid.size()), 0.0, true};
}

/// Logarithmic weight lambda(a) = log(2 / (1 - |a|)), exact for tiny gaps.
inline double lmoa_weight(const DiscPoint& a) { return std::log(2.0) - std::log(a.gap); }

/// Grid maximum of lambda(a) || g o sigma_a - g(a) ||_2, plus the profile.
struct LmoaResult {
  NormEstimate sup;
  std::vector<double> profile;  // weighted values in grid order
};

inline LmoaResult lmoa_seminorm(const AnalyticFn& g, const std::vector<DiscPoint>& grid,
                                QuadratureConfig cfg = {}) {
  if (grid.empty()) throw std::invalid_argument("lmoa_seminorm: empty grid");
  LmoaResult res;
  res.profile.reserve(grid.size());
  std::int64_t evals = 0;
  double err = 0.0;
  for (const DiscPoint& a : grid) {
    const NormEstimate e = compose_mean(g, a, 2.0, cfg);
    const double v = lmoa_weight(a) * e.value;
    res.profile.push_back(v);
    evals += e.resolution;
    if (v >= res.sup.value) {
      res.sup.value = v;
      err = e.error_bound * lmoa_weight(a);
    }
  }
  res.sup.resolution = evals;
  res.sup.error_bound = err;
  return res;
}

}  // namespace hvl

#endif  // HVL_NORMS_HPP
