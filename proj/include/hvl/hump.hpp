// The gliding-hump construction: inductive selection of window widths
// eps_n and points b_n whose test functions (or their T_g images) carry
// almost disjoint boundary mass, certification of the selection, and the
// finite-section embedding bounds that realize the l^p copy.

#ifndef HVL_HUMP_HPP
#define HVL_HUMP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hvl/analytic.hpp"
#include "hvl/candidate_path.hpp"
#include "hvl/core.hpp"
#include "hvl/norms.hpp"
#include "hvl/quadrature.hpp"
#include "hvl/volterra.hpp"

namespace hvl {

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

enum class SelectionKind { flat, volterra };

inline std::string to_string(SelectionKind k) {
  return k == SelectionKind::flat ? "flat" : "volterra";
}

struct LevelRecord {
  int n = 0;                          // 1-based level
  DiscPoint b;                        // selected point
  std::int64_t candidate_index = -1;  // 0-based index into the path
  double epsilon = 0.0;               // accepted window half-width
  int epsilon_trials = 0;             // measured shrink steps
  int candidate_trials = 0;           // measured candidates
  std::vector<double> cond_i_values;  // roots (int_{A_n} |.|_j^p dm)^{1/p}, j < n
  double cond_ii_value = 0.0;         // root of the complement mass
  double cond_iii_value = 0.0;        // root of the window mass
  double threshold = 0.0;             // 4^{-n} resp. 4^{-n} delta c_hat
  double window_lo = 0.0;             // cond (iii) acceptance interval
  double window_hi = 0.0;

  double margin_i() const {
    double m = HUGE_VAL;
    for (double v : cond_i_values) m = std::min(m, threshold - v);
    return m;
  }
  double margin_ii() const { return threshold - cond_ii_value; }
  double margin_iii() const {
    return std::min(cond_iii_value - window_lo, window_hi - cond_iii_value);
  }
};

struct SelectionCertificate {
  SelectionKind kind = SelectionKind::flat;
  double p = 2.0;
  std::optional<SymbolSpec> symbol;  // volterra only
  double c_hat = 0.0;                // volterra only
  double delta = 0.0;                // volterra only: 2^{-2-2/p}
  std::vector<LevelRecord> levels;
  CandidateSequence path;            // provenance: the candidates selected from
  std::string path_label;

  int level_count() const { return int(levels.size()); }

  double min_margin() const {
    double m = HUGE_VAL;
    for (const LevelRecord& lv : levels)
      m = std::min({m, lv.margin_i(), lv.margin_ii(), lv.margin_iii()});
    return m;
  }

  /// Structural invariants: shrinking windows, points marching outward,
  /// all stored values strictly inside their thresholds.
  void validate() const {
    if (levels.empty()) throw std::invalid_argument("certificate: no levels");
    double prev_eps = HUGE_VAL, prev_gap = 2.0;
    for (const LevelRecord& lv : levels) {
      if (!(lv.epsilon < prev_eps))
        throw std::invalid_argument("certificate: eps_n must decrease strictly");
      if (!(lv.b.gap < prev_gap))
        throw std::invalid_argument("certificate: |b_n| must increase strictly");
      prev_eps = lv.epsilon;
      prev_gap = lv.b.gap;
      if (!(lv.margin_i() > 0.0 && lv.margin_ii() > 0.0 && lv.margin_iii() > 0.0))
        throw std::invalid_argument("certificate: nonpositive margin at level " +
                                    std::to_string(lv.n));
    }
    if (kind == SelectionKind::volterra) {
      if (!(c_hat > 0.0)) throw std::invalid_argument("certificate: c_hat must be positive");
      if (delta_equation_residual() > 1e-12)
        throw std::invalid_argument("certificate: delta does not satisfy its equation");
    }
  }

  /// Residual of 2^{-2p} - 2 delta^p = 2^{-2p-1}, the equation fixing delta.
  double delta_equation_residual() const {
    return std::abs(std::pow(2.0, -2.0 * p) - 2.0 * std::pow(delta, p) -
                    std::pow(2.0, -2.0 * p - 1.0));
  }
};

struct SelectionFailure {
  int level = 0;
  std::string condition;
  std::string detail;
};

/// A failed selection is a result, not an exception: the compactness
/// control depends on observing exactly where the induction dies.
struct SelectionOutcome {
  std::optional<SelectionCertificate> certificate;
  std::optional<SelectionFailure> failure;

  bool ok() const { return certificate.has_value(); }
};

struct SelectOptions {
  int trials_cap = 60;          // measured shrink / advance steps per level
  double accept_eta = 0.5;      // accept condition values below eta * threshold
  double window_pad = 0.1;      // shrink of the cond (iii) acceptance window
  std::size_t profile_points = 16;
  double radial_tol = 1e-8;
  int backscan = 6;             // steps of smallest-admissible-index search
  QuadratureConfig quad{1e-8, 1e-18};
  NormLimitOptions profile{};
};

// ---------------------------------------------------------------------------
// Boundary-mass meters.
// ---------------------------------------------------------------------------

namespace detail {

/// p-masses of one boundary profile (|f_b|^p or |T_g f_b|^p): total mass and
/// mass inside the window A_eps around omega.
class MassMeter {
 public:
  MassMeter(const std::optional<AnalyticFn>& g, const DiscPoint& b, double p, double omega,
            const SelectOptions& opts)
      : p_(p), omega_(omega), opts_(opts) {
    fa_ = make_test_function(b, p, 64);
    if (g) {
      ev_ = std::make_shared<VolterraEvaluator>(*g, fa_);
      feats_ = ev_->boundary_features();
    } else {
      feats_ = {{b.phi, b.gap}};
    }
  }

  double profile(double theta) const {
    if (ev_) return std::pow(std::abs(ev_->eval(RadialPoint{0.0, theta}, opts_.radial_tol).value), p_);
    return std::pow(std::abs(fa_.eval_closed(RadialPoint{0.0, theta})), p_);
  }

  double total() {
    if (!(total_ >= 0.0)) {
      auto fn = [this](double th) { return profile(th); };
      total_ = arc_mass_of(fn, Arc::full_circle(), feats_, opts_.quad).value;
    }
    return total_;
  }

  double inside(double eps) {
    auto fn = [this](double th) { return profile(th); };
    return arc_mass_of(fn, Arc(omega_, std::min(eps, pi)), feats_, opts_.quad).value;
  }

  double outside(double eps) { return std::max(total() - inside(eps), 0.0); }

 private:
  double p_;
  double omega_;
  SelectOptions opts_;
  AnalyticFn fa_;
  std::shared_ptr<VolterraEvaluator> ev_;
  std::vector<AngularFeature> feats_;
  double total_ = -1.0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Selection.
// ---------------------------------------------------------------------------

namespace detail {

/// Shared induction for both selection kinds.  g empty -> flat conditions on
/// |f|^p with thresholds 4^{-n}; g present -> conditions on |T_g f|^p with
/// thresholds 4^{-n} delta c_hat and the window c/2 <= value <= 2c.
inline SelectionOutcome run_selection(SelectionKind kind, const std::optional<AnalyticFn>& g,
                                      double p, const CandidateSequence& candidates,
                                      int n_max, double c_hat, double delta,
                                      const SelectOptions& opts) {
  if (!(p >= 1.0)) throw std::invalid_argument("selection: p must be >= 1");
  if (n_max < 1) throw std::invalid_argument("selection: need at least one level");
  if (candidates.size() < 4 * std::size_t(n_max))
    throw std::invalid_argument("selection: candidates too sparse (need >= 4 * n_max points)");

  const double omega = candidates.omega_arg;
  SelectionCertificate cert;
  cert.kind = kind;
  cert.p = p;
  cert.c_hat = c_hat;
  cert.delta = delta;
  cert.path = candidates;
  cert.path_label = candidates.label;

  std::vector<std::unique_ptr<MassMeter>> chosen;  // meters of selected f_1..f_{n-1}
  auto fail = [&](int level, std::string cond, std::string detail_msg) {
    return SelectionOutcome{std::nullopt, SelectionFailure{level, std::move(cond),
                                                           std::move(detail_msg)}};
  };

  double prev_eps = pi;
  std::int64_t prev_idx = -1;
  for (int n = 1; n <= n_max; ++n) {
    const double tau =
        (kind == SelectionKind::flat) ? std::pow(4.0, -n) : std::pow(4.0, -n) * delta * c_hat;
    LevelRecord lv;
    lv.n = n;
    lv.threshold = tau;

    // --- window phase: shrink eps until condition (i) clears every f_j ---
    double eps = 0.5 * prev_eps;
    int trials = 0;
    for (;;) {
      ++trials;
      if (trials > opts.trials_cap)
        return fail(n, "condition (i)", "window shrink cap exhausted");
      if (eps < 64.0 * min_gap)
        return fail(n, "condition (i)", "window below the resolution floor");
      double worst = 0.0;
      for (auto& meter : chosen)
        worst = std::max(worst, std::pow(meter->inside(eps), 1.0 / p) / (opts.accept_eta * tau));
      if (worst < 1.0) break;
      // window mass scales ~ eps here, so the needed shrink is predictable
      const int jump = std::clamp(int(std::ceil(p * std::log2(worst))) + 1, 1, 400);
      eps = std::ldexp(eps, -jump);
    }
    lv.epsilon = eps;
    lv.epsilon_trials = trials;

    // --- candidate phase: advance until (ii) (and (iii)) hold at A_eps ---
    const double win_lo = (kind == SelectionKind::flat) ? 0.0 : 0.5 * c_hat;
    const double win_hi = (kind == SelectionKind::flat) ? 1.0 + 1e-6 : 2.0 * c_hat;
    const double acc_lo =
        (kind == SelectionKind::flat) ? 0.0 : win_lo * (1.0 + opts.window_pad);
    const double acc_hi = (kind == SelectionKind::flat)
                              ? 1.0 + 1e-6
                              : win_hi * (1.0 - opts.window_pad);

    auto admissible = [&](std::int64_t idx, MassMeter& meter, LevelRecord& rec) {
      const double inside = meter.inside(eps);
      const double out_root = std::pow(meter.outside(eps), 1.0 / p);
      const double in_root = std::pow(inside, 1.0 / p);
      rec.candidate_index = idx;
      rec.b = candidates[std::size_t(idx)];
      rec.cond_ii_value = out_root;
      rec.cond_iii_value = in_root;
      return out_root < opts.accept_eta * tau && in_root >= acc_lo && in_root <= acc_hi;
    };

    std::int64_t idx = prev_idx + 1;
    trials = 0;
    std::int64_t found = -1;
    std::unique_ptr<MassMeter> found_meter;
    while (found < 0) {
      ++trials;
      if (trials > opts.trials_cap)
        return fail(n, "condition (ii)/(iii)", "candidate advance cap exhausted");
      if (idx >= std::int64_t(candidates.size()))
        return fail(n, "condition (ii)", "candidate exhaustion before threshold 4^{-n}");
      auto meter = std::make_unique<MassMeter>(g, candidates[std::size_t(idx)], p, omega, opts);
      LevelRecord probe = lv;
      if (admissible(idx, *meter, probe)) {
        found = idx;
        lv = probe;
        found_meter = std::move(meter);
        break;
      }
      if (probe.cond_ii_value >= opts.accept_eta * tau) {
        // complement mass scales ~ gap: jump to the first candidate deep enough
        const double factor =
            std::pow(probe.cond_ii_value / (0.7 * opts.accept_eta * tau), p);
        const double target_gap = candidates[std::size_t(idx)].gap / factor;
        std::int64_t next = idx + 1;
        while (next + 1 < std::int64_t(candidates.size()) &&
               candidates[std::size_t(next)].gap > target_gap)
          ++next;
        idx = next;
      } else {
        ++idx;  // (iii) failed: walk forward one step
      }
    }

    // smallest admissible index: walk back while the previous candidate works
    for (int back = 0; back < opts.backscan && found > prev_idx + 1; ++back) {
      auto meter =
          std::make_unique<MassMeter>(g, candidates[std::size_t(found) - 1], p, omega, opts);
      LevelRecord probe = lv;
      if (!admissible(found - 1, *meter, probe)) break;
      --found;
      lv = probe;
      found_meter = std::move(meter);
      ++lv.candidate_trials;
    }
    lv.candidate_trials += trials;
    lv.window_lo = win_lo;
    lv.window_hi = win_hi;

    // --- condition (i) record against the accepted window ---
    lv.cond_i_values.clear();
    for (auto& meter : chosen)
      lv.cond_i_values.push_back(std::pow(meter->inside(eps), 1.0 / p));

    chosen.push_back(std::move(found_meter));
    cert.levels.push_back(lv);
    prev_eps = eps;
    prev_idx = found;
  }

  cert.validate();
  return SelectionOutcome{std::move(cert), std::nullopt};
}

}  // namespace detail

/// Prop-(bddmap)-style selection on the raw test functions.
inline SelectionOutcome select_flat(double p, const CandidateSequence& candidates, int n_max,
                                    SelectOptions opts = {}) {
  return detail::run_selection(SelectionKind::flat, std::nullopt, p, candidates, n_max, 0.0,
                               0.0, opts);
}

/// Isomorphism-theorem selection on the images T_g f.  Requires a stabilized
/// norm-limit estimate c_hat along the same candidate path; an unstable
/// profile (the compact case) refuses to run, which is itself the witness.
inline SelectionOutcome select_volterra(const SymbolSpec& symbol, double p,
                                        const CandidateSequence& candidates, int n_max,
                                        SelectOptions opts = {}) {
  if (symbol.kind == SymbolSpec::Kind::monomial && symbol.power == 0)
    throw std::invalid_argument("select_volterra: constant symbols give T_g = 0");
  const AnalyticFn g = make_symbol(symbol, 4096);
  NormLimitOptions popts = opts.profile;
  const CandidateSequence gate_path =
      candidates.prefix(std::min(opts.profile_points, candidates.size()));
  const NormLimitProfile prof = normlimit_profile(g, p, gate_path, popts);
  if (!prof.stabilized || !(prof.c_hat > 0.0)) {
    SelectionFailure f{0, "c_hat stability",
                       "norm-limit profile not stabilized: c_hat = " +
                           std::to_string(prof.c_hat) +
                           " (compact-type decay or too few path points)"};
    return SelectionOutcome{std::nullopt, f};
  }
  const double delta = std::pow(2.0, -2.0 - 2.0 / p);
  SelectionOutcome out = detail::run_selection(SelectionKind::volterra, g, p, candidates,
                                               n_max, prof.c_hat, delta, opts);
  if (out.certificate) out.certificate->symbol = symbol;
  return out;
}

/// Measure the flat conditions at an already-selected (eps_n, b_n) family:
/// the isomorphism argument reuses one subsequence for both operators.
inline SelectionOutcome measure_flat_certificate(const SelectionCertificate& vol,
                                                 SelectOptions opts = {}) {
  if (vol.kind != SelectionKind::volterra)
    throw std::invalid_argument("measure_flat_certificate: need a volterra certificate");
  SelectionCertificate cert;
  cert.kind = SelectionKind::flat;
  cert.p = vol.p;
  cert.path = vol.path;
  cert.path_label = vol.path_label + " (reused points)";
  const double omega = vol.path.omega_arg;

  std::vector<std::unique_ptr<detail::MassMeter>> meters;
  for (const LevelRecord& lv : vol.levels)
    meters.push_back(
        std::make_unique<detail::MassMeter>(std::nullopt, lv.b, vol.p, omega, opts));

  for (std::size_t n = 0; n < vol.levels.size(); ++n) {
    const LevelRecord& src = vol.levels[n];
    LevelRecord lv;
    lv.n = src.n;
    lv.b = src.b;
    lv.candidate_index = src.candidate_index;
    lv.epsilon = src.epsilon;
    lv.threshold = std::pow(4.0, -double(n + 1));
    lv.window_lo = 0.0;
    lv.window_hi = 1.0 + 1e-6;
    for (std::size_t j = 0; j < n; ++j)
      lv.cond_i_values.push_back(std::pow(meters[j]->inside(src.epsilon), 1.0 / vol.p));
    lv.cond_ii_value = std::pow(meters[n]->outside(src.epsilon), 1.0 / vol.p);
    lv.cond_iii_value = std::pow(meters[n]->inside(src.epsilon), 1.0 / vol.p);
    if (!(lv.margin_i() > 0.0 && lv.margin_ii() > 0.0 && lv.margin_iii() > 0.0))
      return SelectionOutcome{
          std::nullopt,
          SelectionFailure{lv.n, "flat condition re-measurement",
                           "volterra points do not satisfy the flat thresholds"}};
    cert.levels.push_back(lv);
  }
  cert.validate();
  return SelectionOutcome{std::move(cert), std::nullopt};
}

// ---------------------------------------------------------------------------
// Certificate replay.
// ---------------------------------------------------------------------------

struct ReplayReport {
  std::vector<double> shifts;        // |re-measured - stored| per stored value
  std::vector<double> margins;       // matching margins
  double worst_shift_over_margin = 0.0;
  bool passed = false;               // every shift < 10% of its margin
};

/// Re-measure every stored condition value at doubled quadrature resolution.
inline ReplayReport replay_certificate(const SelectionCertificate& cert,
                                       SelectOptions opts = {}) {
  opts.quad.refine += 1;
  opts.radial_tol *= 0.1;
  std::optional<AnalyticFn> g;
  if (cert.kind == SelectionKind::volterra) g = make_symbol(*cert.symbol, 4096);
  const double omega = cert.path.omega_arg;

  ReplayReport rep;
  std::vector<std::unique_ptr<detail::MassMeter>> meters;
  for (const LevelRecord& lv : cert.levels)
    meters.push_back(std::make_unique<detail::MassMeter>(g, lv.b, cert.p, omega, opts));

  auto push = [&](double fresh, double stored, double margin) {
    rep.shifts.push_back(std::abs(fresh - stored));
    rep.margins.push_back(margin);
  };
  for (std::size_t n = 0; n < cert.levels.size(); ++n) {
    const LevelRecord& lv = cert.levels[n];
    for (std::size_t j = 0; j < n; ++j)
      push(std::pow(meters[j]->inside(lv.epsilon), 1.0 / cert.p), lv.cond_i_values[j],
           lv.threshold - lv.cond_i_values[j]);
    push(std::pow(meters[n]->outside(lv.epsilon), 1.0 / cert.p), lv.cond_ii_value,
         lv.margin_ii());
    push(std::pow(meters[n]->inside(lv.epsilon), 1.0 / cert.p), lv.cond_iii_value,
         lv.margin_iii());
  }
  rep.worst_shift_over_margin = 0.0;
  for (std::size_t i = 0; i < rep.shifts.size(); ++i)
    rep.worst_shift_over_margin =
        std::max(rep.worst_shift_over_margin, rep.shifts[i] / std::max(rep.margins[i], 1e-300));
  rep.passed = rep.worst_shift_over_margin < 0.1;
  return rep;
}

// ---------------------------------------------------------------------------
// Embeddings and the isomorphism report.
// ---------------------------------------------------------------------------

struct EmbedResult {
  AnalyticFn fn;
  double norm = 0.0;
  double bound = 0.0;   // the certified side: upper for S, lower for U
  bool within_bound = false;
};

namespace detail {

inline void check_support(const SelectionCertificate& cert, const std::vector<cd>& alpha) {
  if (alpha.size() > cert.levels.size())
    throw std::invalid_argument("embedding: support of alpha exceeds certificate levels");
}

inline AnalyticFn combine_test_functions(const SelectionCertificate& cert,
                                         const std::vector<cd>& alpha, int N = 256) {
  std::vector<DiscPoint> pts;
  for (const LevelRecord& lv : cert.levels) pts.push_back(lv.b);
  const double p = cert.p;
  std::vector<cd> coeffs(std::size_t(N) + 1, cd{0.0, 0.0});
  std::vector<AngularFeature> feats;
  std::vector<AnalyticFn> parts;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    parts.push_back(make_test_function(pts[j], p, N));
    for (int k = 0; k <= N; ++k) coeffs[std::size_t(k)] += alpha[j] * parts[j].coeffs[std::size_t(k)];
    feats.push_back({pts[j].phi, pts[j].gap});
  }
  AnalyticFn out(std::move(coeffs));
  auto alpha_copy = alpha;
  out.closed = ClosedForm{
      [parts, alpha_copy](const RadialPoint& q) {
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < alpha_copy.size(); ++j)
          acc += alpha_copy[j] * parts[j].eval_closed(q);
        return acc;
      },
      {},
      feats};
  return out;
}

}  // namespace detail

/// S(alpha) = sum alpha_n f_{b_n} with its H^p norm; certifies the upper
/// bound ||S alpha||_p^p <= 2^{p+1} ||alpha||_p^p.
inline EmbedResult embed_flat(const SelectionCertificate& cert, const std::vector<cd>& alpha,
                              QuadratureConfig quad = {}) {
  if (cert.kind != SelectionKind::flat)
    throw std::invalid_argument("embed_flat: certificate kind mismatch");
  detail::check_support(cert, alpha);
  EmbedResult res;
  res.fn = detail::combine_test_functions(cert, alpha);
  const bool zero = std::all_of(alpha.begin(), alpha.end(),
                                [](const cd& x) { return x == cd{0.0, 0.0}; });
  res.norm = (zero || alpha.empty()) ? 0.0 : hardy_norm(res.fn, cert.p, {.quad = quad}).value;
  const double lp = lp_norm(alpha, cert.p);
  res.bound = std::pow(2.0, (cert.p + 1.0) / cert.p) * lp;
  res.within_bound = res.norm <= res.bound * (1.0 + 1e-9) + 1e-12;
  return res;
}

/// U(alpha) = sum alpha_n T_g f_{b_n}; certifies the lower bound
/// ||U alpha||_p^p >= 2^{-2p-1} c_hat^p ||alpha||_p^p.
inline EmbedResult embed_volterra(const SelectionCertificate& cert, const AnalyticFn& g,
                                  const std::vector<cd>& alpha, double radial_tol = 1e-8,
                                  QuadratureConfig quad = {1e-8, 1e-18}) {
  if (cert.kind != SelectionKind::volterra)
    throw std::invalid_argument("embed_volterra: certificate kind mismatch");
  detail::check_support(cert, alpha);
  EmbedResult res;

  std::vector<std::shared_ptr<VolterraEvaluator>> evs;
  std::vector<AngularFeature> feats;
  std::vector<cd> coeffs;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const AnalyticFn fa = make_test_function(cert.levels[j].b, cert.p, 256);
    const AnalyticFn tg = apply_volterra_coeff(g, fa);
    if (coeffs.size() < tg.coeffs.size()) coeffs.resize(tg.coeffs.size(), cd{0.0, 0.0});
    for (std::size_t k = 0; k < tg.coeffs.size(); ++k) coeffs[k] += alpha[j] * tg.coeffs[k];
    evs.push_back(std::make_shared<VolterraEvaluator>(g, fa));
    const auto fts = evs.back()->boundary_features();
    feats.insert(feats.end(), fts.begin(), fts.end());
  }
  if (coeffs.empty()) coeffs.push_back(cd{0.0, 0.0});
  res.fn = AnalyticFn(std::move(coeffs));
  auto alpha_copy = alpha;
  res.fn.closed = ClosedForm{
      [evs, alpha_copy, radial_tol](const RadialPoint& q) {
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < alpha_copy.size(); ++j)
          acc += alpha_copy[j] * evs[j]->eval(q, radial_tol).value;
        return acc;
      },
      {},
      feats};

  const bool zero = std::all_of(alpha.begin(), alpha.end(),
                                [](const cd& x) { return x == cd{0.0, 0.0}; });
  res.norm = (zero || alpha.empty()) ? 0.0 : hardy_norm(res.fn, cert.p, {.quad = quad}).value;
  const double lp = lp_norm(alpha, cert.p);
  res.bound = std::pow(2.0, -(2.0 * cert.p + 1.0) / cert.p) * cert.c_hat * lp;
  res.within_bound = res.norm >= res.bound * (1.0 - 1e-9) - 1e-12;
  return res;
}

// ---------------------------------------------------------------------------
// Trials: the finite-section statement of the main theorem.
// ---------------------------------------------------------------------------

struct TrialRecord {
  std::vector<cd> alpha;
  double lp = 0.0;        // || alpha ||_{l^p}
  double v_norm = 0.0;    // || V alpha ||_p = || sum alpha_n f_n ||_p
  double u_norm = 0.0;    // || U alpha ||_p = || T_g V alpha ||_p
  double ratio_u = 0.0;   // u_norm / lp
  double ratio_v = 0.0;   // v_norm / lp
  double restriction = 0.0;  // u_norm / v_norm
  bool within_bounds = false;
  bool is_spike = false;
};

struct EmbeddingReport {
  std::string certificate_id;
  double p = 2.0;
  double c_hat = 0.0;
  int trials = 0;          // requested random trials
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;  // spikes first, then seeded trials
  double min_ratio = 0.0, max_ratio = 0.0;  // of ratio_u over all records
  double bound_upper = 0.0;   // 2^{(p+1)/p}
  double bound_lower = 0.0;   // 2^{-(2p+1)/p} c_hat
  double restriction_lower = 0.0;
  double restriction_required = 0.0;  // composed constant
  bool all_within_bounds = false;
  bool passed = false;
};

/// Trials of the two embeddings over one fixed boundary node table; the
/// T_g f_n profiles are the expensive part and are computed once.
inline EmbeddingReport isomorphism_report(const SelectionCertificate& flat,
                                          const SelectionCertificate& vol, int trials,
                                          std::uint64_t seed, double radial_tol = 1e-8) {
  if (flat.kind != SelectionKind::flat || vol.kind != SelectionKind::volterra)
    throw std::invalid_argument("isomorphism_report: certificate kinds mismatch");
  if (flat.p != vol.p || flat.levels.size() != vol.levels.size())
    throw std::invalid_argument("isomorphism_report: certificates disagree on p or levels");
  for (std::size_t j = 0; j < flat.levels.size(); ++j)
    if (flat.levels[j].b.gap != vol.levels[j].b.gap ||
        flat.levels[j].b.phi != vol.levels[j].b.phi)
      throw std::invalid_argument("isomorphism_report: certificates select different points");

  const double p = vol.p;
  const std::size_t L = vol.levels.size();
  const AnalyticFn g = make_symbol(*vol.symbol, 4096);

  EmbeddingReport rep;
  rep.certificate_id = to_string(vol.kind) + "/" + vol.path_label;
  rep.p = p;
  rep.c_hat = vol.c_hat;
  rep.trials = trials;
  rep.seed = seed;
  rep.bound_upper = std::pow(2.0, (p + 1.0) / p);
  rep.bound_lower = std::pow(2.0, -(2.0 * p + 1.0) / p) * vol.c_hat;
  rep.restriction_required = rep.bound_lower / rep.bound_upper;

  // fixed node table: graded segments for the union of all features
  std::vector<AngularFeature> feats{{0.0, 0.0}};
  if (g.closed)
    for (double s : g.closed->singular_angles) feats.push_back({s, 0.0});
  for (const LevelRecord& lv : vol.levels) feats.push_back({lv.b.phi, lv.b.gap});
  const std::vector<double> brk = graded_breakpoints(-pi, pi, feats, 1);
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double xs[15], ws[15];
    detail::gk15_nodes(brk[i], brk[i + 1], xs, ws);
    nodes.insert(nodes.end(), xs, xs + 15);
    weights.insert(weights.end(), ws, ws + 15);
  }

  // cached profiles of f_n and T_g f_n on the node table
  std::vector<std::vector<cd>> fvals(L), tvals(L);
  for (std::size_t j = 0; j < L; ++j) {
    const AnalyticFn fa = make_test_function(vol.levels[j].b, p, 64);
    const VolterraEvaluator ev(g, fa);
    fvals[j].resize(nodes.size());
    tvals[j].resize(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
      fvals[j][i] = fa.eval_closed(RadialPoint{0.0, nodes[i]});
      tvals[j][i] = ev.eval(RadialPoint{0.0, nodes[i]}, radial_tol).value;
    });
  }

  auto run_trial = [&](const std::vector<cd>& alpha, bool spike) {
    TrialRecord tr;
    tr.alpha = alpha;
    tr.is_spike = spike;
    tr.lp = lp_norm(alpha, p);
    double vm = 0.0, um = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      cd v{0.0, 0.0}, u{0.0, 0.0};
      for (std::size_t j = 0; j < L; ++j) {
        v += alpha[j] * fvals[j][i];
        u += alpha[j] * tvals[j][i];
      }
      vm += weights[i] * std::pow(std::abs(v), p);
      um += weights[i] * std::pow(std::abs(u), p);
    }
    tr.v_norm = std::pow(vm / two_pi, 1.0 / p);
    tr.u_norm = std::pow(um / two_pi, 1.0 / p);
    if (tr.lp > 0.0) {
      tr.ratio_u = tr.u_norm / tr.lp;
      tr.ratio_v = tr.v_norm / tr.lp;
    }
    if (tr.v_norm > 0.0) tr.restriction = tr.u_norm / tr.v_norm;
    tr.within_bounds =
        tr.v_norm <= rep.bound_upper * tr.lp * (1.0 + 1e-9) &&
        tr.u_norm >= rep.bound_lower * tr.lp * (1.0 - 1e-9);
    rep.records.push_back(tr);
  };

  // exhaustive single spikes, then seeded unit-disc-uniform draws
  for (std::size_t j = 0; j < L; ++j) {
    std::vector<cd> e(L, cd{0.0, 0.0});
    e[j] = cd{1.0, 0.0};
    run_trial(e, true);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int tIdx = 0; tIdx < trials; ++tIdx) {
    std::vector<cd> alpha(L);
    for (std::size_t j = 0; j < L; ++j) {
      double x, y;
      do {
        x = unit(rng);
        y = unit(rng);
      } while (x * x + y * y > 1.0);
      alpha[j] = cd{x, y};
    }
    run_trial(alpha, false);
  }

  if (!rep.records.empty()) {
    rep.min_ratio = HUGE_VAL;
    rep.restriction_lower = HUGE_VAL;
    rep.all_within_bounds = true;
    for (const TrialRecord& tr : rep.records) {
      rep.min_ratio = std::min(rep.min_ratio, tr.ratio_u);
      rep.max_ratio = std::max(rep.max_ratio, tr.ratio_u);
      rep.restriction_lower = std::min(rep.restriction_lower, tr.restriction);
      rep.all_within_bounds = rep.all_within_bounds && tr.within_bounds;
    }
  }
  rep.passed = trials > 0 && rep.all_within_bounds &&
               rep.restriction_lower >= rep.restriction_required;
  return rep;
}

}  // namespace hvl

#endif  // HVL_HUMP_HPP
