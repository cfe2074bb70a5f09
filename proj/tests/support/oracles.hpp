// Test-only oracles, independent of the library's quadrature path.
//
//  * harmonic_measure: the arctan antiderivative of the Poisson kernel,
//    the exact value of every f_a arc mass;
//  * tg_log1_testfn_p2: partial fractions give T_{log 1/(1-z)} f_a in
//    closed form when p = 2;
//  * parseval_l2_partial: direct truncated Parseval sums.

#ifndef HVL_TEST_ORACLES_HPP
#define HVL_TEST_ORACLES_HPP

#include <cmath>

#include "hvl/core.hpp"
#include "hvl/norms.hpp"

namespace oracles {

using hvl::cd;

/// Continuous antiderivative of the Poisson kernel mass: H(psi) increases
/// by 1 per full turn, H(0) = 0.
inline double poisson_antiderivative(double psi, double gap) {
  const double kappa = (2.0 - gap) / gap;
  const double branch = std::floor(psi / hvl::two_pi + 0.5);
  return (std::atan(kappa * std::tan(0.5 * psi)) + hvl::pi * branch) / hvl::pi;
}

/// Exact harmonic measure of an arc at the point a: the value every
/// arc_integral(f_a, p, arc) must reproduce, for every p.
inline double harmonic_measure(const hvl::DiscPoint& a, const hvl::Arc& arc) {
  const double lo = arc.center - arc.half_width - a.phi;
  const double hi = arc.center + arc.half_width - a.phi;
  return poisson_antiderivative(hi, a.gap) - poisson_antiderivative(lo, a.gap);
}

/// T_g f_a for g = log 1/(1-z) and p = 2, via partial fractions:
/// sqrt(1-|a|^2)/(1-abar) * [log(1-abar z) - log(1-z)], evaluated stably
/// at z = (1-u) e^{i theta}.
inline cd tg_log1_testfn_p2(const hvl::DiscPoint& a, const hvl::RadialPoint& z) {
  const cd one_m_az = hvl::one_minus_conj_az(a, z);
  const cd one_m_z = hvl::one_minus_scaled_unit(z.gap, z.theta);
  const cd one_m_abar = std::conj(hvl::one_minus_scaled_unit(a.gap, a.phi));
  return std::sqrt(a.one_minus_abs2()) / one_m_abar * (std::log(one_m_az) - std::log(one_m_z));
}

/// Truncated Parseval sum sum_{k<=K} |u^k - v^k|^2 / k^2 for real u, v.
inline double parseval_l2_partial(double u, double v, int K) {
  double s = 0.0;
  double uk = 1.0, vk = 1.0;
  for (int k = 1; k <= K; ++k) {
    uk *= u;
    vk *= v;
    const double d = uk - vk;
    s += d * d / (double(k) * double(k));
  }
  return s;
}

}  // namespace oracles

#endif  // HVL_TEST_ORACLES_HPP
