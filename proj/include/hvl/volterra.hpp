// The Volterra-type operator T_g f(z) = int_0^z f g' dzeta, by two
// independent backends: termwise integration of the coefficient product and
// adaptive radial quadrature of the closed forms (the only route that works
// on the boundary circle, where all the localization lemmas live).

#ifndef HVL_VOLTERRA_HPP
#define HVL_VOLTERRA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hvl/analytic.hpp"
#include "hvl/candidate_path.hpp"
#include "hvl/core.hpp"
#include "hvl/fft.hpp"
#include "hvl/norms.hpp"
#include "hvl/quadrature.hpp"

namespace hvl {

namespace detail {
inline int trimmed_degree(const AnalyticFn& f) {
  for (int n = f.degree(); n >= 0; --n)
    if (f.coeffs[std::size_t(n)] != cd{0.0, 0.0}) return n;
  return 0;
}
}  // namespace detail

/// Coefficient backend: h_0 = 0, h_k = (1/k) sum_{n+m=k-1} f_n g'_m.
/// Exact for polynomial inputs; for truncated series the result is cut at
/// the largest index where every contributing product is stored.
inline AnalyticFn apply_volterra_coeff(const AnalyticFn& g, const AnalyticFn& f) {
  const AnalyticFn gp = derivative(g);
  const int exact_f = f.summable_tail ? std::numeric_limits<int>::max() : f.degree();
  const int exact_g = gp.summable_tail ? std::numeric_limits<int>::max() : gp.degree();
  std::vector<cd> fc = f.coeffs, gc = gp.coeffs;
  if (f.summable_tail) fc.resize(std::size_t(detail::trimmed_degree(f)) + 1);
  if (gp.summable_tail) gc.resize(std::size_t(detail::trimmed_degree(gp)) + 1);

  std::vector<cd> conv = convolve(fc, gc);
  const int full = int(conv.size()) - 1;                       // deg f + deg g'
  const int keep = std::min(full, std::min(exact_f, exact_g));  // min combined degree
  std::vector<cd> h(std::size_t(keep) + 2, cd{0.0, 0.0});
  for (int k = 1; k <= keep + 1; ++k) h[std::size_t(k)] = conv[std::size_t(k) - 1] / double(k);
  AnalyticFn out(std::move(h));
  out.summable_tail = f.summable_tail && gp.summable_tail;
  return out;
}

/// Quadrature backend.  Bound to a fixed (g, f) pair so the boundary sweeps
/// that evaluate thousands of points build the derivative only once.
class VolterraEvaluator {
 public:
  struct Value {
    cd value{0.0, 0.0};
    double error = 0.0;
    bool ok = true;
  };

  VolterraEvaluator(const AnalyticFn& g, AnalyticFn f)
      : f_(std::move(f)), gp_(derivative(g)) {
    collect(f_);
    collect(gp_);
    if (gp_.closed)
      for (double s : gp_.closed->singular_angles) singular_.push_back(s);
  }

  const AnalyticFn& integrand_f() const { return f_; }
  const AnalyticFn& g_derivative() const { return gp_; }

  /// Features of the boundary profile theta -> |T_g f(e^{i theta})|.
  std::vector<AngularFeature> boundary_features() const { return features_; }

  bool on_singular_ray(const RadialPoint& z) const {
    if (z.gap > 0.0) return false;
    // only an exact hit is rejected; the stable kernels evaluate correctly
    // at any nonzero angular distance, however small
    for (double s : singular_)
      if (angle_dist(z.theta, s) == 0.0) return true;
    return false;
  }

  Value eval(const RadialPoint& z, double tol = 1e-10, int refine = 0) const {
    if (z.gap > 1.0) throw std::invalid_argument("VolterraEvaluator: point outside disc");
    if (on_singular_ray(z))
      throw std::domain_error("VolterraEvaluator: boundary point on a singular ray of g'");
    const cd zval = z.value();
    if (zval == cd{0.0, 0.0}) return {cd{0.0, 0.0}, 0.0, true};

    // Finest layer scale along the ray: distance from the ray endpoint to
    // each kernel zero / peak point, in the stable |1 - conj(w) z| metric.
    double scale = 1.0;
    for (const AngularFeature& ft : features_) {
      const double a2 =
          abs2_one_minus_scaled_unit(gap_mul(ft.scale, z.gap), z.theta - ft.angle);
      scale = std::min(scale, std::sqrt(a2));
    }
    auto integrand = [&](double u) -> cd {
      const RadialPoint w{gap_mul(u, z.gap), z.theta};
      return ray_eval(f_, w) * ray_eval(gp_, w) * zval;
    };
    const ComplexIntegral ci = integrate_radial_layer(integrand, scale, tol, refine);
    return {ci.value, ci.error, ci.converged};
  }

 private:
  static cd ray_eval(const AnalyticFn& h, const RadialPoint& w) {
    if (h.closed) return h.eval_closed(w);
    if (h.summable_tail || h.series_valid_at(1.0 - w.gap)) return h.eval_series(w);
    throw std::domain_error(
        "VolterraEvaluator: series-only factor not valid near the boundary");
  }

  void collect(const AnalyticFn& h) {
    if (!h.closed) return;
    for (const AngularFeature& ft : h.closed->features) features_.push_back(ft);
    for (double s : h.closed->singular_angles) features_.push_back({s, 0.0});
  }

  AnalyticFn f_;
  AnalyticFn gp_;
  std::vector<AngularFeature> features_;
  std::vector<double> singular_;
};

/// One-off quadrature evaluation of T_g f at z.
inline cd apply_volterra_quad(const AnalyticFn& g, const AnalyticFn& f, cd z,
                              double tol = 1e-10) {
  const VolterraEvaluator ev(g, f);
  const VolterraEvaluator::Value v = ev.eval(AnalyticFn::radial_of(z), tol);
  if (!v.ok)
    throw std::runtime_error("apply_volterra_quad: tolerance not reached within subdivision cap");
  return v.value;
}

struct VolterraBackendReport {
  double max_abs_discrepancy = 0.0;
  std::vector<cd> sample_points;
};

/// Max |coefficient backend - quadrature backend| over interior points.
inline VolterraBackendReport volterra_consistency(const AnalyticFn& g, const AnalyticFn& f,
                                                  const std::vector<cd>& points,
                                                  double tol = 1e-11) {
  VolterraBackendReport rep;
  rep.sample_points = points;
  if (points.empty()) return rep;
  const AnalyticFn h = apply_volterra_coeff(g, f);
  const VolterraEvaluator ev(g, f);
  for (const cd& z : points) {
    const RadialPoint q = AnalyticFn::radial_of(z);
    if (!h.summable_tail && !h.series_valid_at(1.0 - q.gap))
      throw std::domain_error("volterra_consistency: point beyond series validity");
    const cd a = h.eval_series(q);
    const cd b = ev.eval(q, tol).value;
    rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, std::abs(a - b));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Aleman-Cima ratio and the norm-limit profile.
// ---------------------------------------------------------------------------

struct AlemanCimaRatio {
  double ratio = 0.0;
  bool defined = false;
  double numerator = 0.0;    // || g o sigma_a - g(a) ||_t^t
  double denominator = 0.0;  // || T_g f_a ||_p^t
};

/// || g o sigma_a - g(a) ||_t^t / || T_g f_a ||_p^t for 0 < t < p/2.
/// The denominator goes through the coefficient backend and hardy_norm.
inline AlemanCimaRatio aleman_cima_ratio(const AnalyticFn& g, const DiscPoint& a, double p,
                                         double t, int N = 4096,
                                         QuadratureConfig cfg = {}) {
  if (!(t > 0.0 && t < 0.5 * p))
    throw std::invalid_argument("aleman_cima_ratio: need 0 < t < p/2");
  AlemanCimaRatio out;
  const NormEstimate num = compose_mean(g, a, t, cfg);
  out.numerator = std::pow(num.value, t);
  const AnalyticFn fa = make_test_function(a, p, N);
  const AnalyticFn h = apply_volterra_coeff(g, fa);
  const NormEstimate den = hardy_norm(h, p, {.quad = cfg});
  out.denominator = std::pow(den.value, t);
  if (den.value < 1e-14) return out;  // ratio undefined (e.g. constant symbol)
  out.ratio = out.numerator / out.denominator;
  out.defined = true;
  return out;
}

struct NormLimitProfile {
  std::vector<DiscPoint> points;
  std::vector<double> norms;      // || T_g f_{a_k} ||_p along the path
  double c_hat = 0.0;             // max over the last quartile
  bool stabilized = false;        // relative change under one more point < 1%
  std::string path_label;
};

namespace detail {
inline double last_quartile_max(const std::vector<double>& v, std::size_t upto) {
  const std::size_t n = std::min(upto, v.size());
  if (n == 0) return 0.0;
  const std::size_t q = (n + 3) / 4;
  double best = 0.0;
  for (std::size_t i = n - q; i < n; ++i) best = std::max(best, v[i]);
  return best;
}
}  // namespace detail

struct NormLimitOptions {
  int N = 4096;            // truncation degree of the test functions
  double quad_tol = 1e-9;  // per-point radial tolerance
  QuadratureConfig quad{};
};

/// || T_g f_{a_k} ||_p along a candidate path, with the limsup estimate
/// c_hat and its stabilization flag.  Boundary values come from the
/// quadrature backend, so the path may run arbitrarily deep.
inline NormLimitProfile normlimit_profile(const AnalyticFn& g, double p,
                                          const CandidateSequence& path,
                                          NormLimitOptions opts = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("normlimit_profile: p must be >= 1");
  NormLimitProfile prof;
  prof.points = path.points;
  prof.path_label = path.label;
  prof.norms.resize(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const DiscPoint& a = path[k];
    const AnalyticFn fa = make_test_function(a, p, opts.N);
    const VolterraEvaluator ev(g, fa);
    std::vector<AngularFeature> feats = ev.boundary_features();
    auto profile_fn = [&](double theta) {
      return std::pow(std::abs(ev.eval(RadialPoint{0.0, theta}, opts.quad_tol).value), p);
    };
    const NormEstimate mass =
        arc_mass_of(profile_fn, Arc::full_circle(), feats, opts.quad);
    prof.norms[k] = std::pow(std::max(mass.value, 0.0), 1.0 / p);
  }
  prof.c_hat = detail::last_quartile_max(prof.norms, prof.norms.size());
  if (path.size() >= 4) {
    const double prev = detail::last_quartile_max(prof.norms, prof.norms.size() - 1);
    prof.stabilized = prof.c_hat > 0.0 &&
                      std::abs(prof.c_hat - prev) < 0.01 * std::max(prof.c_hat, 1e-300);
  }
  return prof;
}

}  // namespace hvl

#endif  // HVL_VOLTERRA_HPP
