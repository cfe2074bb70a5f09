// Analytic functions on the unit disc: truncated Taylor series plus, where
// available, an exact closed-form boundary evaluator.  Builders for the
// standard test functions f_a, Moebius maps and the library's symbols.

#ifndef HVL_ANALYTIC_HPP
#define HVL_ANALYTIC_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hvl/core.hpp"

namespace hvl {

/// An angular location on the circle where a boundary profile needs graded
/// resolution: a peak (scale > 0) or a genuine singularity (scale == 0).
struct AngularFeature {
  double angle = 0.0;
  double scale = 0.0;
};

/// Exact evaluation backend attached to built-in functions.
struct ClosedForm {
  std::function<cd(const RadialPoint&)> eval;
  std::vector<double> singular_angles;   // boundary directions where eval blows up
  std::vector<AngularFeature> features;  // grading hints for quadrature
};

enum class Backend { series, closed };

class AnalyticFn {
 public:
  std::vector<cd> coeffs;  // c_0 .. c_N
  std::optional<ClosedForm> closed;
  std::optional<ClosedForm> closed_derivative;
  bool summable_tail = false;  // series converges absolutely on |z| = 1
  double series_radius = 0.0;  // validity radius of truncated-series evaluation

  AnalyticFn() : coeffs{cd{0.0, 0.0}} {}

  explicit AnalyticFn(std::vector<cd> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(cd{0.0, 0.0});
    for (const cd& x : coeffs)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::invalid_argument("AnalyticFn: coefficients must be finite");
    series_radius = tail_radius(1e-10);
  }

  int degree() const { return int(coeffs.size()) - 1; }

  /// Largest radius at which the truncated series is trusted to `tol`,
  /// from a geometric bound on the (extrapolated) coefficient tail.
  double tail_radius(double tol) const {
    const int N = degree();
    const int lo = std::max(0, N - 32);
    double amp = 0.0;
    for (int n = lo; n <= N; ++n) amp = std::max(amp, std::abs(coeffs[std::size_t(n)]));
    if (amp == 0.0) return 1.0;  // polynomial: no tail at all
    double q = 0.0;
    for (int n = std::max(1, N / 2); n < N; ++n) {
      const double a0 = std::abs(coeffs[std::size_t(n)]);
      const double a1 = std::abs(coeffs[std::size_t(n) + 1]);
      if (a0 > 0.0 && a1 > 0.0) q = std::max(q, a1 / a0);
    }
    if (q == 0.0) return 1.0;
    q = std::min(q, 1.0);
    auto tail = [&](double r) {
      const double qr = q * r;
      if (qr >= 1.0) return HUGE_VAL;
      return amp * std::pow(r, double(N)) * qr / (1.0 - qr);
    };
    double lo_r = 0.0, hi_r = 1.0;
    if (tail(1.0 - 1e-12) <= tol) return 1.0 - 1e-12;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo_r + hi_r);
      (tail(mid) <= tol ? lo_r : hi_r) = mid;
    }
    return lo_r;
  }

  /// Horner evaluation of the truncated series.
  cd eval_series(cd z) const {
    cd acc{0.0, 0.0};
    for (int n = degree(); n >= 0; --n) acc = acc * z + coeffs[std::size_t(n)];
    return acc;
  }

  cd eval_series(const RadialPoint& q) const { return eval_series(q.value()); }

  cd eval_closed(const RadialPoint& q) const {
    if (!closed) throw std::domain_error("AnalyticFn: no closed form attached");
    return closed->eval(q);
  }

  bool series_valid_at(double modulus) const {
    return summable_tail ? modulus <= 1.0 : modulus <= series_radius;
  }

  /// Preferred evaluation: closed form when present, guarded series otherwise.
  cd eval(const RadialPoint& q) const {
    if (closed) return closed->eval(q);
    if (!series_valid_at(1.0 - q.gap))
      throw std::domain_error("AnalyticFn: series evaluation outside validity radius");
    return eval_series(q);
  }

  cd eval(cd z) const { return eval(radial_of(z)); }

  static RadialPoint radial_of(cd z) {
    const double r = std::abs(z);
    if (r > 1.0 + 1e-12) throw std::invalid_argument("evaluation point outside closed disc");
    return {std::max(0.0, 1.0 - r), (z == cd{0.0, 0.0}) ? 0.0 : std::arg(z)};
  }
};

/// Spec'd entry point with an explicit backend choice.
inline cd evaluate(const AnalyticFn& f, cd z, Backend backend) {
  const RadialPoint q = AnalyticFn::radial_of(z);
  if (backend == Backend::closed) return f.eval_closed(q);
  if (!f.series_valid_at(1.0 - q.gap))
    throw std::domain_error("evaluate: series backend outside validity radius");
  return f.eval_series(q);
}

inline cd evaluate(const AnalyticFn& f, const RadialPoint& q, Backend backend) {
  if (backend == Backend::closed) return f.eval_closed(q);
  if (!f.series_valid_at(1.0 - q.gap))
    throw std::domain_error("evaluate: series backend outside validity radius");
  return f.eval_series(q);
}

/// Termwise derivative; carries over the attached derivative closed form.
inline AnalyticFn derivative(const AnalyticFn& f) {
  std::vector<cd> c;
  if (f.degree() >= 1) {
    c.resize(std::size_t(f.degree()));
    for (int n = 1; n <= f.degree(); ++n)
      c[std::size_t(n) - 1] = double(n) * f.coeffs[std::size_t(n)];
  } else {
    c.push_back(cd{0.0, 0.0});
  }
  AnalyticFn d(std::move(c));
  // summable_tail marks an exact polynomial, and those stay polynomials
  d.summable_tail = f.summable_tail;
  if (f.closed_derivative) d.closed = f.closed_derivative;
  return d;
}

// ---------------------------------------------------------------------------
// Moebius automorphisms sigma_a(z) = (a - z) / (1 - conj(a) z).
// ---------------------------------------------------------------------------

class MobiusMap {
 public:
  DiscPoint a;

  explicit MobiusMap(const DiscPoint& point) : a(point) {}
  explicit MobiusMap(cd point) : a(DiscPoint::from_complex(point)) {}

  cd operator()(cd z) const { return (*this)(AnalyticFn::radial_of(z)); }

  cd operator()(const RadialPoint& z) const {
    const double psi = z.theta - a.phi;
    // (1-t) - (1-u) e^{i psi}, cancellation-free
    const cd num = one_minus_unit(psi) - cd{a.gap, 0.0} + z.gap * expi(psi);
    return expi(a.phi) * num / one_minus_conj_az(a, z);
  }

  /// Argument of sigma_a(e^{i theta}); the image lies on the circle.
  double boundary_angle(double theta) const {
    const double psi = theta - a.phi;
    const cd num = one_minus_unit(psi) - cd{a.gap, 0.0};
    const cd den = one_minus_scaled_unit(a.gap, psi);
    return wrap_angle(a.phi + std::arg(num) - std::arg(den));
  }
};

inline MobiusMap make_mobius(const DiscPoint& a) { return MobiusMap(a); }
inline MobiusMap make_mobius(cd a) { return MobiusMap(a); }

// ---------------------------------------------------------------------------
// Symbols.
// ---------------------------------------------------------------------------

struct SymbolSpec {
  enum class Kind { log1, monomial, polynomial, carleson_log, custom };

  Kind kind = Kind::log1;
  int power = 0;              // monomial
  std::vector<cd> coeffs;     // polynomial / custom
  DiscPoint u;                // carleson_log base point

  static SymbolSpec Log1() { return SymbolSpec{Kind::log1, 0, {}, DiscPoint::origin()}; }
  static SymbolSpec Monomial(int k) {
    if (k < 0) throw std::invalid_argument("Monomial: power must be >= 0");
    return SymbolSpec{Kind::monomial, k, {}, DiscPoint::origin()};
  }
  static SymbolSpec Polynomial(std::vector<cd> c) {
    return SymbolSpec{Kind::polynomial, 0, std::move(c), DiscPoint::origin()};
  }
  static SymbolSpec CarlesonLog(const DiscPoint& u) {
    return SymbolSpec{Kind::carleson_log, 0, {}, u};
  }
  static SymbolSpec CarlesonLog(cd u) { return CarlesonLog(DiscPoint::from_complex(u)); }
  static SymbolSpec Custom(std::vector<cd> c) {
    return SymbolSpec{Kind::custom, 0, std::move(c), DiscPoint::origin()};
  }

  std::string name() const {
    switch (kind) {
      case Kind::log1: return "log1";
      case Kind::monomial: return "monomial:" + std::to_string(power);
      case Kind::polynomial: return "polynomial[" + std::to_string(coeffs.size()) + "]";
      case Kind::carleson_log: return "carleson";
      case Kind::custom: return "custom[" + std::to_string(coeffs.size()) + "]";
    }
    return "?";
  }
};

/// g(z) = log(1/(1-z)) and friends; closed forms are attached together with
/// their derivative so T_g quadrature can reach the boundary.
inline AnalyticFn make_symbol(const SymbolSpec& spec, int N) {
  if (N < 1) throw std::invalid_argument("make_symbol: N must be >= 1");
  switch (spec.kind) {
    case SymbolSpec::Kind::log1: {
      std::vector<cd> c(std::size_t(N) + 1);
      for (int n = 1; n <= N; ++n) c[std::size_t(n)] = cd{1.0 / double(n), 0.0};
      AnalyticFn g(std::move(c));
      g.closed = ClosedForm{
          [](const RadialPoint& q) { return -std::log(one_minus_scaled_unit(q.gap, q.theta)); },
          {0.0},
          {{0.0, 0.0}}};
      g.closed_derivative = ClosedForm{
          [](const RadialPoint& q) { return 1.0 / one_minus_scaled_unit(q.gap, q.theta); },
          {0.0},
          {{0.0, 0.0}}};
      return g;
    }
    case SymbolSpec::Kind::monomial: {
      const int k = spec.power;
      std::vector<cd> c(std::size_t(std::max(N, k)) + 1, cd{0.0, 0.0});
      c[std::size_t(k)] = cd{1.0, 0.0};
      AnalyticFn g(std::move(c));
      g.summable_tail = true;
      auto mon = [](int kk) {
        return [kk](const RadialPoint& q) -> cd {
          if (kk == 0) return cd{1.0, 0.0};
          const double mod = (q.gap >= 1.0) ? 0.0 : std::exp(double(kk) * std::log1p(-q.gap));
          return mod * expi(double(kk) * q.theta);
        };
      };
      g.closed = ClosedForm{mon(k), {}, {}};
      if (k >= 1) {
        auto base = mon(k - 1);
        g.closed_derivative =
            ClosedForm{[base, k](const RadialPoint& q) { return double(k) * base(q); }, {}, {}};
      } else {
        g.closed_derivative = ClosedForm{[](const RadialPoint&) { return cd{0.0, 0.0}; }, {}, {}};
      }
      return g;
    }
    case SymbolSpec::Kind::polynomial:
    case SymbolSpec::Kind::custom: {
      std::vector<cd> c = spec.coeffs;
      if (c.empty()) c.push_back(cd{0.0, 0.0});
      if (int(c.size()) - 1 < N) c.resize(std::size_t(N) + 1, cd{0.0, 0.0});
      AnalyticFn g(std::move(c));
      g.summable_tail = true;
      if (spec.kind == SymbolSpec::Kind::polynomial) {
        // closed = the finite sum itself; derivative likewise
        const std::vector<cd> cc = g.coeffs;
        g.closed = ClosedForm{[cc](const RadialPoint& q) {
                                cd acc{0.0, 0.0};
                                const cd z = q.value();
                                for (int n = int(cc.size()) - 1; n >= 0; --n)
                                  acc = acc * z + cc[std::size_t(n)];
                                return acc;
                              },
                              {},
                              {}};
        std::vector<cd> dc(cc.size() > 1 ? cc.size() - 1 : 1, cd{0.0, 0.0});
        for (std::size_t n = 1; n < cc.size(); ++n) dc[n - 1] = double(n) * cc[n];
        g.closed_derivative = ClosedForm{[dc](const RadialPoint& q) {
                                           cd acc{0.0, 0.0};
                                           const cd z = q.value();
                                           for (int n = int(dc.size()) - 1; n >= 0; --n)
                                             acc = acc * z + dc[std::size_t(n)];
                                           return acc;
                                         },
                                         {},
                                         {}};
      }
      return g;
    }
    case SymbolSpec::Kind::carleson_log: {
      const DiscPoint u = spec.u;  // validated on construction: gap > 0
      std::vector<cd> c(std::size_t(N) + 1, cd{0.0, 0.0});
      cd ub = std::conj(u.value());
      cd acc = ub;
      for (int n = 1; n <= N; ++n) {
        c[std::size_t(n)] = -acc / double(n);
        acc *= ub;
      }
      AnalyticFn g(std::move(c));
      g.closed = ClosedForm{
          [u](const RadialPoint& q) { return std::log(one_minus_conj_az(u, q)); },
          {},
          {{u.phi, u.gap}}};
      g.closed_derivative = ClosedForm{
          [u, ub](const RadialPoint& q) { return -ub / one_minus_conj_az(u, q); },
          {},
          {{u.phi, u.gap}}};
      return g;
    }
  }
  throw std::logic_error("make_symbol: unreachable");
}

// ---------------------------------------------------------------------------
// Test functions f_a(z) = (1-|a|^2)^{1/p} / (1 - conj(a) z)^{2/p}.
// ---------------------------------------------------------------------------

/// Coefficients via the rising-factorial recurrence
/// c_{n+1} = c_n (beta + n)/(n + 1) conj(a), beta = 2/p.
inline AnalyticFn make_test_function(const DiscPoint& a, double p, int N,
                                     double boundary_tol = 0.0) {
  if (!(p >= 1.0)) throw std::invalid_argument("make_test_function: p must be >= 1");
  if (N < 1) throw std::invalid_argument("make_test_function: N must be >= 1");
  const double beta = 2.0 / p;
  const double norm_factor = std::pow(a.one_minus_abs2(), 1.0 / p);
  const cd abar = std::conj(a.value());
  std::vector<cd> c(std::size_t(N) + 1);
  c[0] = cd{norm_factor, 0.0};
  for (int n = 0; n < N; ++n)
    c[std::size_t(n) + 1] = c[std::size_t(n)] * ((beta + double(n)) / double(n + 1)) * abar;
  AnalyticFn f(std::move(c));
  if (boundary_tol > 0.0) {
    const double r_eval = 1.0 - 10.0 / double(N);
    const double q = a.modulus() * (beta + double(N)) / double(N + 1);
    const double qr = q * r_eval;
    const double tail = (qr >= 1.0) ? HUGE_VAL
                                    : std::abs(f.coeffs.back()) *
                                          std::pow(r_eval, double(N)) * qr / (1.0 - qr);
    if (tail > boundary_tol)
      throw std::invalid_argument(
          "make_test_function: truncation degree too small for requested accuracy");
  }
  const double expo = -2.0 / p;
  f.closed = ClosedForm{
      [a, norm_factor, expo](const RadialPoint& q) {
        return norm_factor * pow_principal(one_minus_conj_az(a, q), expo);
      },
      {},
      {{a.phi, a.gap}}};
  return f;
}

inline AnalyticFn make_test_function(cd a, double p, int N, double boundary_tol = 0.0) {
  return make_test_function(DiscPoint::from_complex(a), p, N, boundary_tol);
}

/// g(sigma_a(e^{i theta})) - g(a).  The image point lies on the circle, so g
/// must either carry a closed form or have an absolutely summable tail.
inline cd compose_with_mobius(const AnalyticFn& g, const DiscPoint& a, double theta) {
  const MobiusMap sigma(a);
  const RadialPoint w{0.0, sigma.boundary_angle(theta)};
  const RadialPoint at_a = a.radial();
  if (g.closed) return g.eval_closed(w) - g.eval_closed(at_a);
  if (!g.summable_tail)
    throw std::domain_error(
        "compose_with_mobius: series-only function without summable tail on the boundary");
  return g.eval_series(w) - g.eval_series(at_a);
}

}  // namespace hvl

#endif  // HVL_ANALYTIC_HPP
