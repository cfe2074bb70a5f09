// Executable drivers for the localization lemmas and the Carleson-window
// sequence statistics: every "-> 0" claim becomes a decay report with an
// eventual-monotonicity check and a threshold on the final value.

#ifndef HVL_LEMMA_HPP
#define HVL_LEMMA_HPP

#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvl/analytic.hpp"
#include "hvl/candidate_path.hpp"
#include "hvl/core.hpp"
#include "hvl/norms.hpp"
#include "hvl/volterra.hpp"

namespace hvl {

struct DecaySequenceReport {
  std::vector<double> labels;
  std::vector<double> values;
  bool eventually_decreasing = false;
  int decreasing_from = 0;     // first index of the monotone suffix
  double final_value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string what;
};

/// Monotonicity must hold over at least the second half of the sequence;
/// a lucky dip at the end is not accepted as decay.
inline DecaySequenceReport make_decay_report(std::vector<double> labels,
                                             std::vector<double> values, double threshold,
                                             std::string what = "") {
  if (labels.size() != values.size())
    throw std::invalid_argument("decay report: label/value length mismatch");
  if (values.empty()) throw std::invalid_argument("decay report: empty");
  DecaySequenceReport rep;
  rep.labels = std::move(labels);
  rep.values = std::move(values);
  rep.threshold = threshold;
  rep.what = std::move(what);
  rep.final_value = rep.values.back();

  const std::size_t n = rep.values.size();
  std::size_t i0 = n - 1;
  while (i0 > 0) {
    const double here = rep.values[i0 - 1];
    const double next = rep.values[i0];
    if (next <= here * (1.0 + 1e-9) + 1e-15)
      --i0;
    else
      break;
  }
  rep.decreasing_from = int(i0);
  rep.eventually_decreasing = (n == 1) || (i0 + 2 <= n && i0 <= (n - 1) / 2);
  rep.passed = rep.eventually_decreasing && rep.final_value < threshold;
  return rep;
}

struct LemmaOptions {
  double threshold = 0.0;        // 0 = per-lemma default (1e-3 mass, 5e-2
                                 // localization, 1e-2 localization2)
  QuadratureConfig quad{};
  double radial_tol = 1e-9;      // per boundary point, relative
  double failure_budget = 0.01;  // fraction of boundary points allowed to stall
};

namespace detail {
inline double resolve_threshold(const LemmaOptions& opts, double lemma_default) {
  return opts.threshold > 0.0 ? opts.threshold : lemma_default;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Mass localization of the test functions themselves.
// ---------------------------------------------------------------------------

/// v_k = int_{T \ A_eps} |f_{a_k}|^p dm -> 0 along the path.
inline DecaySequenceReport verify_masslemma_i(double p, const CandidateSequence& path,
                                              double eps, LemmaOptions opts = {}) {
  if (!(eps > 0.0 && eps <= pi))
    throw std::invalid_argument("verify_masslemma_i: eps must be in (0, pi]");
  if (path.size() < 4) throw std::invalid_argument("verify_masslemma_i: path too short");
  const Arc window(path.omega_arg, eps);
  const std::optional<Arc> rest = window.complement();
  std::vector<double> labels, values;
  for (std::size_t k = 0; k < path.size(); ++k) {
    labels.push_back(double(k + 1));
    if (!rest) {
      values.push_back(0.0);
      continue;
    }
    const AnalyticFn fa = make_test_function(path[k], p, 64);
    values.push_back(arc_integral(fa, p, *rest, {.quad = opts.quad}).value);
  }
  return make_decay_report(std::move(labels), std::move(values),
                           detail::resolve_threshold(opts, 1e-3), "masslemma(i)");
}

/// v_j = int_{A_{eps_j}} |f_a|^p dm -> 0 as the window shrinks.
inline DecaySequenceReport verify_masslemma_ii(double p, const DiscPoint& a,
                                               const std::vector<double>& eps_schedule,
                                               std::optional<double> center = std::nullopt,
                                               LemmaOptions opts = {}) {
  if (eps_schedule.empty()) throw std::invalid_argument("verify_masslemma_ii: empty schedule");
  double prev = HUGE_VAL;
  for (double e : eps_schedule) {
    if (!(e > 0.0 && e <= pi && e < prev))
      throw std::invalid_argument("verify_masslemma_ii: schedule must decrease inside (0, pi]");
    prev = e;
  }
  const double c = center.value_or(a.phi);
  const AnalyticFn fa = make_test_function(a, p, 64);
  std::vector<double> labels, values;
  for (double e : eps_schedule) {
    labels.push_back(e);
    values.push_back(arc_integral(fa, p, Arc(c, e), {.quad = opts.quad}).value);
  }
  return make_decay_report(std::move(labels), std::move(values),
                           detail::resolve_threshold(opts, 1e-3), "masslemma(ii)");
}

// ---------------------------------------------------------------------------
// Localization of the images T_g f_a.
// ---------------------------------------------------------------------------

/// Half-width of the window I(a): (1-|a|)^{1 / (2 (2+p))}, from the gap.
inline double localization_half_width(const DiscPoint& a, double p) {
  return std::exp(std::log(a.gap) / (2.0 * (2.0 + p)));
}

namespace detail {

/// Arc mass of |T_g f_a|^p with per-point failure accounting.
inline NormEstimate tg_arc_mass(const VolterraEvaluator& ev, double p, const Arc& arc,
                                const LemmaOptions& opts) {
  std::atomic<long> total{0}, failed{0};
  auto profile = [&](double theta) {
    const VolterraEvaluator::Value v = ev.eval(RadialPoint{0.0, theta}, opts.radial_tol);
    total.fetch_add(1);
    if (!v.ok) failed.fetch_add(1);
    return std::pow(std::abs(v.value), p);
  };
  const NormEstimate mass = arc_mass_of(profile, arc, ev.boundary_features(), opts.quad);
  if (failed.load() > opts.failure_budget * double(total.load()))
    throw std::runtime_error("localization quadrature: more than " +
                             std::to_string(100.0 * opts.failure_budget) +
                             "% of boundary points missed tolerance");
  return mass;
}

}  // namespace detail

/// v_k = int_{T \ I(a_k)} |T_g f_{a_k}|^p dm with the shrinking window of
/// the localization lemma; default threshold 5e-2.
inline DecaySequenceReport verify_localization(const AnalyticFn& g, double p,
                                               const CandidateSequence& path,
                                               LemmaOptions opts = {}) {
  if (path.size() < 2) throw std::invalid_argument("verify_localization: path too short");
  std::vector<double> labels, values;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const DiscPoint& a = path[k];
    const double hw = localization_half_width(a, p);
    labels.push_back(double(k + 1));
    const std::optional<Arc> rest = Arc(a.phi, std::min(hw, pi)).complement();
    if (!rest) {
      values.push_back(0.0);
      continue;
    }
    const AnalyticFn fa = make_test_function(a, p, 64);
    const VolterraEvaluator ev(g, fa);
    values.push_back(detail::tg_arc_mass(ev, p, *rest, opts).value);
  }
  return make_decay_report(std::move(labels), std::move(values),
                           detail::resolve_threshold(opts, 5e-2), "localization");
}

struct Localization2Report {
  DecaySequenceReport part_i;   // fixed window, k -> infinity
  DecaySequenceReport part_ii;  // fixed k, shrinking window
};

inline Localization2Report verify_localization2(const AnalyticFn& g, double p,
                                                const CandidateSequence& path, double eps,
                                                std::size_t fixed_k = 2,
                                                std::vector<double> eps_schedule = {},
                                                LemmaOptions opts = {}) {
  if (!(eps > 0.0 && eps <= pi))
    throw std::invalid_argument("verify_localization2: eps must be in (0, pi]");
  if (path.size() < 4) throw std::invalid_argument("verify_localization2: path too short");
  if (fixed_k < 1 || fixed_k > path.size())
    throw std::invalid_argument("verify_localization2: fixed_k out of range");
  if (eps_schedule.empty())
    for (int j = 1; j <= 18; ++j) eps_schedule.push_back(pi * std::ldexp(1.0, -j));

  Localization2Report rep;
  {
    const Arc window(path.omega_arg, eps);
    const std::optional<Arc> rest = window.complement();
    std::vector<double> labels, values;
    for (std::size_t k = 0; k < path.size(); ++k) {
      labels.push_back(double(k + 1));
      if (!rest) {
        values.push_back(0.0);
        continue;
      }
      const AnalyticFn fa = make_test_function(path[k], p, 64);
      const VolterraEvaluator ev(g, fa);
      values.push_back(detail::tg_arc_mass(ev, p, *rest, opts).value);
    }
    rep.part_i = make_decay_report(std::move(labels), std::move(values),
                                   detail::resolve_threshold(opts, 1e-2),
                                   "localization2(i)");
  }
  {
    const AnalyticFn fa = make_test_function(path[fixed_k - 1], p, 64);
    const VolterraEvaluator ev(g, fa);
    std::vector<double> labels, values;
    for (double e : eps_schedule) {
      labels.push_back(e);
      values.push_back(detail::tg_arc_mass(ev, p, Arc(path.omega_arg, e), opts).value);
    }
    rep.part_ii = make_decay_report(std::move(labels), std::move(values),
                                    detail::resolve_threshold(opts, 1e-2),
                                    "localization2(ii)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Carleson-window difference sequence h_n = f_{n+1} - f_n with
// f_n(z) = log(1 - conj(u_n) z), u_n the window base points.
// ---------------------------------------------------------------------------

struct LeibovStats {
  std::vector<double> arcs;   // |I_n|
  std::vector<double> stars;  // || h_n ||_* grid estimates
  std::vector<double> l2s;    // || h_n ||_2, exact Parseval values
};

/// || f_u - f_v ||_2 for real base points u = 1-du, v = 1-dv via the exact
/// dilogarithm form of the Parseval sum  sum_k |u^k - v^k|^2 / k^2.
inline double log_kernel_l2_distance(double du, double dv) {
  if (!(du > 0.0 && du <= 1.0 && dv > 0.0 && dv <= 1.0))
    throw std::invalid_argument("log_kernel_l2_distance: gaps must be in (0, 1]");
  // 1-u^2, 1-uv, 1-v^2 expressed through the gaps; all cancellation-free
  const double duu = du * (2.0 - du);
  const double dvv = dv * (2.0 - dv);
  const double duv = du + dv - du * dv;
  const double s = dilog_one_minus(duu) - 2.0 * dilog_one_minus(duv) + dilog_one_minus(dvv);
  return std::sqrt(std::max(s, 0.0));
}

/// The h_n themselves, as closed-form differences of the two log kernels.
inline AnalyticFn make_window_difference(double d_next, double d_cur, int N = 256) {
  const DiscPoint u_next(d_next, 0.0), u_cur(d_cur, 0.0);
  const AnalyticFn f_next = make_symbol(SymbolSpec::CarlesonLog(u_next), N);
  const AnalyticFn f_cur = make_symbol(SymbolSpec::CarlesonLog(u_cur), N);
  std::vector<cd> c(f_next.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_next.coeffs[i] - f_cur.coeffs[i];
  AnalyticFn h(std::move(c));
  h.closed = ClosedForm{
      [u_next, u_cur](const RadialPoint& q) {
        return std::log(one_minus_conj_az(u_next, q)) - std::log(one_minus_conj_az(u_cur, q));
      },
      {},
      {{0.0, d_next}, {0.0, d_cur}}};
  return h;
}

struct LeibovOptions {
  double q = 2.0;                    // seminorm exponent
  int rays = 8;
  std::vector<DiscPoint> grid = {};  // custom seminorm grid (all n) when nonempty
  QuadratureConfig quad{};
};

/// Star and L2 statistics of the difference sequence over a shrinking arc
/// schedule.  The seminorm grid descends with each h_n so the grid sup can
/// see oscillation living at the scale of the smaller window.
inline LeibovStats leibov_sequence_stats(const std::vector<double>& arc_lengths,
                                         LeibovOptions opts = {}) {
  if (arc_lengths.size() < 2)
    throw std::invalid_argument("leibov_sequence_stats: need at least two arcs");
  double prev = HUGE_VAL;
  for (double d : arc_lengths) {
    if (!(d > 0.0 && d < 1.0 && d < prev))
      throw std::invalid_argument("leibov_sequence_stats: arc lengths must decrease strictly");
    prev = d;
  }
  LeibovStats stats;
  stats.arcs = arc_lengths;
  for (std::size_t n = 0; n + 1 < arc_lengths.size(); ++n) {
    const double d_cur = arc_lengths[n], d_next = arc_lengths[n + 1];
    stats.l2s.push_back(log_kernel_l2_distance(d_next, d_cur));
    const AnalyticFn h = make_window_difference(d_next, d_cur);
    std::vector<DiscPoint> grid = opts.grid;
    if (grid.empty()) {
      const int depth = std::max(4, int(std::ceil(-std::log2(d_next))) + 2);
      grid = standard_grid(opts.rays, depth);
    }
    stats.stars.push_back(bmoa_seminorm(h, grid, opts.q, opts.quad).value);
  }
  return stats;
}

}  // namespace hvl

#endif  // HVL_LEMMA_HPP
