// Core numeric types for boundary-layer computations on the unit disc.
//
// Points close to the unit circle are stored by their boundary gap
// t = 1 - |a| together with the argument, never as raw complex values:
// the selection loops in this library legitimately produce gaps around
// 1e-100, where 1 - |a| computed from a complex double is exactly zero.
// All kernel evaluations below are written so that no difference of
// nearly-equal quantities ever occurs.

#ifndef HVL_CORE_HPP
#define HVL_CORE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hvl {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Smallest boundary gap the quadrature machinery resolves.  Far below
/// anything the level-6 selections need, far above the denormal range.
inline constexpr double min_gap = 1e-280;

inline cd expi(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double theta) {
  double w = std::remainder(theta, two_pi);
  if (w <= -pi) w += two_pi;
  return w;
}

/// Circular distance |theta - phi| mod 2*pi, in [0, pi].
inline double angle_dist(double theta, double phi) {
  return std::abs(wrap_angle(theta - phi));
}

/// 1 - e^{i psi} = 2 sin^2(psi/2) - 2 i sin(psi/2) cos(psi/2).
/// Accurate to full relative precision for psi near 0.
inline cd one_minus_unit(double psi) {
  const double s = std::sin(0.5 * psi), c = std::cos(0.5 * psi);
  return {2.0 * s * s, -2.0 * s * c};
}

/// 1 - (1-gap) e^{i psi}, computed without cancellation.
inline cd one_minus_scaled_unit(double gap, double psi) {
  return one_minus_unit(psi) + gap * expi(psi);
}

/// |1 - (1-gap) e^{i psi}|^2 = gap^2 + 4 (1-gap) sin^2(psi/2).
/// Sum of nonnegative terms; exact where the naive form loses everything.
inline double abs2_one_minus_scaled_unit(double gap, double psi) {
  const double s = std::sin(0.5 * psi);
  return gap * gap + 4.0 * (1.0 - gap) * s * s;
}

/// Gap of a product of moduli: 1 - (1-u)(1-v) = u + v - u*v.
inline double gap_mul(double u, double v) { return u + v - u * v; }

/// A point written as z = (1 - gap) e^{i theta}; gap = 0 is the boundary.
struct RadialPoint {
  double gap = 1.0;
  double theta = 0.0;

  cd value() const { return (1.0 - gap) * expi(theta); }
};

/// A point of the open unit disc, stored boundary-layer style.
struct DiscPoint {
  double gap = 1.0;   // 1 - |a|, in (0, 1]
  double phi = 0.0;   // argument

  DiscPoint() = default;
  DiscPoint(double gap_, double phi_) : gap(gap_), phi(wrap_angle(phi_)) {
    if (!(gap > 0.0) || gap > 1.0 || !std::isfinite(phi_))
      throw std::invalid_argument("DiscPoint: gap must lie in (0, 1]");
  }

  static DiscPoint origin() { return DiscPoint(1.0, 0.0); }

  static DiscPoint from_complex(cd a) {
    const double r = std::abs(a);
    if (!(r < 1.0)) throw std::invalid_argument("DiscPoint: |a| must be < 1");
    if (r == 0.0) return origin();
    return DiscPoint(1.0 - r, std::arg(a));
  }

  double modulus() const { return 1.0 - gap; }
  cd value() const { return (1.0 - gap) * expi(phi); }
  RadialPoint radial() const { return {gap, phi}; }

  /// 1 - |a|^2 = gap * (2 - gap), exact for tiny gaps.
  double one_minus_abs2() const { return gap * (2.0 - gap); }
};

/// 1 - conj(a) z for z = (1-u) e^{i theta}: the workhorse kernel factor.
inline cd one_minus_conj_az(const DiscPoint& a, const RadialPoint& z) {
  return one_minus_scaled_unit(gap_mul(a.gap, z.gap), z.theta - a.phi);
}

inline double abs2_one_minus_conj_az(const DiscPoint& a, const RadialPoint& z) {
  return abs2_one_minus_scaled_unit(gap_mul(a.gap, z.gap), z.theta - a.phi);
}

/// Poisson kernel (1-|a|^2) / |1 - conj(a) e^{i theta}|^2 at the boundary.
inline double poisson_kernel(const DiscPoint& a, double theta) {
  return a.one_minus_abs2() / abs2_one_minus_scaled_unit(a.gap, theta - a.phi);
}

/// w^e on the principal branch.  Valid here because every base this
/// library raises has strictly positive real part on the closed disc.
inline cd pow_principal(cd w, double e) { return std::exp(e * std::log(w)); }

// ---------------------------------------------------------------------------
// Dilogarithm on [0, 1], used for exact Parseval sums of log-kernel
// differences.  Series for small arguments, Euler reflection otherwise.
// ---------------------------------------------------------------------------

/// Li_2(x) for 0 <= x <= 0.5 by direct series.
inline double dilog_small(double x) {
  double term = x, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term / (double(k) * double(k));
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= x;
  }
  return sum;
}

/// Li_2(1 - delta) for delta in [0, 1]; delta may be denormal-small.
inline double dilog_one_minus(double delta) {
  if (delta >= 0.5) return dilog_small(1.0 - delta);
  if (delta == 0.0) return pi * pi / 6.0;
  return pi * pi / 6.0 - std::log1p(-delta) * std::log(delta) - dilog_small(delta);
}

inline double dilog(double x) {
  if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument("dilog: x must be in [0, 1]");
  return x <= 0.5 ? dilog_small(x) : dilog_one_minus(1.0 - x);
}

// ---------------------------------------------------------------------------
// Parallel sweep support.  HVL_THREADS caps the worker count; results are
// written to preassigned slots so reductions stay deterministic.
// ---------------------------------------------------------------------------

inline int max_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("HVL_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return int(std::min(v, 256L));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
  }();
  return n;
}

/// Run fn(i) for i in [0, n).  Each index is processed exactly once; the
/// caller stores results by index, so evaluation order cannot leak out.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const int workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hvl

#endif  // HVL_CORE_HPP
