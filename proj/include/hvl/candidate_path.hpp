// Sequences a_k -> omega on the unit circle, the raw material every limit
// lemma and selection draws from.

#ifndef HVL_CANDIDATE_PATH_HPP
#define HVL_CANDIDATE_PATH_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvl/core.hpp"

namespace hvl {

class CandidateSequence {
 public:
  double omega_arg = 0.0;
  std::vector<DiscPoint> points;
  std::string label;

  CandidateSequence() = default;  // empty placeholder, e.g. before deserialization

  CandidateSequence(double omega, std::vector<DiscPoint> pts, std::string lbl = "")
      : omega_arg(wrap_angle(omega)), points(std::move(pts)), label(std::move(lbl)) {
    validate();
  }

  std::size_t size() const { return points.size(); }
  const DiscPoint& operator[](std::size_t k) const { return points[k]; }

  /// Moduli strictly increasing, arguments approaching omega.
  void validate() const {
    if (points.empty()) throw std::invalid_argument("CandidateSequence: empty");
    double prev_gap = 2.0;
    double prev_dev = HUGE_VAL;
    for (const DiscPoint& a : points) {
      if (!(a.gap < prev_gap))
        throw std::invalid_argument("CandidateSequence: moduli must increase strictly");
      const double dev = angle_dist(a.phi, omega_arg);
      if (dev > prev_dev + 1e-12)
        throw std::invalid_argument("CandidateSequence: arguments must approach omega");
      prev_gap = a.gap;
      prev_dev = dev;
    }
  }

  CandidateSequence prefix(std::size_t n) const {
    if (n == 0 || n > points.size())
      throw std::invalid_argument("CandidateSequence: bad prefix length");
    return CandidateSequence(omega_arg, {points.begin(), points.begin() + long(n)},
                             label + "[:" + std::to_string(n) + "]");
  }
};

/// a_k = (1 - ratio^k) * e^{i omega}: the default radial approach.  With
/// ratio = 1/2 this is the 1 - 2^{-k} path; gaps stay exact doubles all the
/// way down to the denormal range.
inline CandidateSequence geometric_path(double omega_arg, std::size_t count,
                                        double ratio = 0.5) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("geometric_path: ratio must be in (0, 1)");
  if (count == 0) throw std::invalid_argument("geometric_path: count must be positive");
  std::vector<DiscPoint> pts;
  pts.reserve(count);
  double gap = 1.0;
  for (std::size_t k = 1; k <= count; ++k) {
    gap *= ratio;
    if (gap < min_gap) break;
    pts.emplace_back(gap, omega_arg);
  }
  std::string lbl = "geom(omega=" + std::to_string(omega_arg) +
                    ",ratio=" + std::to_string(ratio) + ",n=" + std::to_string(pts.size()) + ")";
  return CandidateSequence(omega_arg, std::move(pts), std::move(lbl));
}

}  // namespace hvl

#endif  // HVL_CANDIDATE_PATH_HPP
