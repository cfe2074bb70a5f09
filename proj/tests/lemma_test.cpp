#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hvl/lemma.hpp"
#include "support/oracles.hpp"

using namespace hvl;
using Catch::Approx;

namespace {

CandidateSequence path_from_origin(double eps_count = 8) {
  std::vector<DiscPoint> pts{DiscPoint::origin()};
  double gap = 0.5;
  for (int k = 1; k < eps_count; ++k, gap *= 0.5) pts.emplace_back(gap, 0.0);
  return CandidateSequence(0.0, std::move(pts), "origin-start");
}

}  // namespace

TEST_CASE("decay report semantics") {
  SECTION("single value passes on the threshold alone") {
    const DecaySequenceReport r = make_decay_report({1.0}, {5e-4}, 1e-3);
    CHECK(r.eventually_decreasing);
    CHECK(r.passed);
  }
  SECTION("all-zero sequences count as decreasing") {
    const DecaySequenceReport r = make_decay_report({1, 2, 3}, {0.0, 0.0, 0.0}, 1e-3);
    CHECK(r.passed);
  }
  SECTION("a final dip without a monotone suffix does not pass") {
    const DecaySequenceReport r =
        make_decay_report({1, 2, 3, 4, 5, 6}, {1.0, 0.1, 1.0, 0.2, 1.0, 1e-6}, 1e-3);
    CHECK_FALSE(r.eventually_decreasing);
    CHECK_FALSE(r.passed);
  }
  SECTION("decay over the second half passes") {
    const DecaySequenceReport r =
        make_decay_report({1, 2, 3, 4, 5, 6}, {0.1, 0.5, 0.3, 0.2, 0.01, 1e-5}, 1e-3);
    CHECK(r.eventually_decreasing);
    CHECK(r.passed);
  }
}

TEST_CASE("mass lemma (i): escape of mass from the complement window") {
  SECTION("origin start pins the first value at 1 - eps/pi") {
    const DecaySequenceReport rep = verify_masslemma_i(2.0, path_from_origin(), pi / 2.0);
    CHECK(rep.values.front() == Approx(1.0 - 0.5).margin(1e-9));
  }
  SECTION("default real path decays below threshold and matches the oracle") {
    const CandidateSequence path = geometric_path(0.0, 10);
    const DecaySequenceReport rep = verify_masslemma_i(2.0, path, pi / 2.0);
    CHECK(rep.passed);
    for (std::size_t k = 0; k < path.size(); ++k) {
      const double oracle =
          1.0 - oracles::harmonic_measure(path[k], Arc(0.0, pi / 2.0));
      CHECK(rep.values[k] == Approx(oracle).margin(1e-6));
    }
  }
  SECTION("full window leaves nothing outside") {
    const DecaySequenceReport rep = verify_masslemma_i(2.0, geometric_path(0.0, 6), pi);
    for (double v : rep.values) CHECK(v == 0.0);
    CHECK(rep.passed);
  }
  SECTION("short paths are rejected") {
    CHECK_THROWS_AS(verify_masslemma_i(2.0, geometric_path(0.0, 3), 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("mass lemma (ii): absolute continuity at a fixed point") {
  SECTION("at the origin the values are exactly the arc measures") {
    std::vector<double> schedule;
    for (int j = 1; j <= 8; ++j) schedule.push_back(pi * std::ldexp(1.0, -j));
    const DecaySequenceReport rep =
        verify_masslemma_ii(2.0, DiscPoint::origin(), schedule);
    for (std::size_t j = 0; j < schedule.size(); ++j)
      CHECK(rep.values[j] == Approx(schedule[j] / pi).margin(1e-10));
  }
  SECTION("deep point, p = 1, decays below threshold on a long schedule") {
    std::vector<double> schedule;
    for (int j = 1; j <= 15; ++j) schedule.push_back(pi * std::ldexp(1.0, -j));
    const DiscPoint a(0.1, 0.0);  // |a| = 0.9
    const DecaySequenceReport rep = verify_masslemma_ii(1.0, a, schedule);
    CHECK(rep.passed);
    for (std::size_t j = 0; j < schedule.size(); ++j) {
      const double oracle = oracles::harmonic_measure(a, Arc(0.0, schedule[j]));
      CHECK(rep.values[j] == Approx(oracle).margin(1e-8));
    }
  }
  SECTION("single-entry schedule passes on the final value only") {
    const DecaySequenceReport rep =
        verify_masslemma_ii(2.0, DiscPoint::origin(), {1e-3 * pi});
    CHECK(rep.passed);
  }
  SECTION("degenerate windows are rejected") {
    CHECK_THROWS_AS(verify_masslemma_ii(2.0, DiscPoint(0.5, 0.0), {1e-304}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_masslemma_ii(2.0, DiscPoint(0.5, 0.0), {0.5, 0.6}),
                    std::invalid_argument);
  }
}

TEST_CASE("complement consistency: window plus complement carry the full unit mass") {
  const CandidateSequence path = geometric_path(0.0, 8);
  const double eps = 1.1;
  const DecaySequenceReport outside = verify_masslemma_i(2.0, path, eps);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const AnalyticFn fa = make_test_function(path[k], 2.0, 64);
    const double inside = arc_integral(fa, 2.0, Arc(0.0, eps)).value;
    CHECK(outside.values[k] + inside == Approx(1.0).margin(1e-6));
  }
}

TEST_CASE("localization window geometry") {
  const double p = 2.0;
  const CandidateSequence path = geometric_path(0.0, 24);
  double prev = HUGE_VAL;
  for (const DiscPoint& a : path.points) {
    const double hw = localization_half_width(a, p);
    CHECK(hw < prev);
    prev = hw;
  }
  // containment I(a_k) inside A_eps from the first index where the half-width
  // and the angular deviation both fall below eps / 2
  const double eps = 0.5;
  std::size_t k0 = path.size();
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (localization_half_width(path[k], p) < eps / 2.0 &&
        angle_dist(path[k].phi, path.omega_arg) < eps / 2.0) {
      k0 = k;
      break;
    }
  }
  REQUIRE(k0 < path.size());
  for (std::size_t k = k0; k < path.size(); ++k) {
    const double hw = localization_half_width(path[k], p);
    CHECK(angle_dist(path[k].phi, path.omega_arg) + hw < eps);
  }
}

TEST_CASE("localization of T_g f_a") {
  SECTION("constant symbols localize trivially") {
    const DecaySequenceReport rep = verify_localization(
        make_symbol(SymbolSpec::Monomial(0), 8), 2.0, geometric_path(0.0, 5));
    for (double v : rep.values) CHECK(v == Approx(0.0).margin(1e-12));
    CHECK(rep.passed);
  }
  SECTION("monomial symbol, p = 2") {
    const DecaySequenceReport rep = verify_localization(
        make_symbol(SymbolSpec::Monomial(1), 64), 2.0, geometric_path(0.0, 8));
    CHECK(rep.passed);
    CHECK(rep.values.back() < rep.values.front());
  }
  SECTION("log symbol on the quartic path") {
    const DecaySequenceReport rep = verify_localization(
        make_symbol(SymbolSpec::Log1(), 256), 2.0, geometric_path(0.0, 5, 0.25));
    CHECK(rep.passed);
    CHECK(rep.final_value < 5e-2);
  }
}

TEST_CASE("localization2 parts (i) and (ii)") {
  const AnalyticFn g = make_symbol(SymbolSpec::Log1(), 256);
  const Localization2Report rep =
      verify_localization2(g, 1.0, geometric_path(0.0, 8), pi / 2.0, 2);
  SECTION("part (i): fixed window, escape along the path") {
    CHECK(rep.part_i.passed);
    CHECK(rep.part_i.final_value < 1e-2);
  }
  SECTION("part (ii): fixed k, shrinking window, monotone trend") {
    for (std::size_t j = 1; j < rep.part_ii.values.size(); ++j)
      CHECK(rep.part_ii.values[j] <= rep.part_ii.values[j - 1] * (1.0 + 1e-9));
    CHECK(rep.part_ii.passed);
  }
  SECTION("constant symbols vanish in both parts") {
    const Localization2Report zero = verify_localization2(
        make_symbol(SymbolSpec::Monomial(0), 8), 1.0, geometric_path(0.0, 6), pi / 2.0, 2);
    for (double v : zero.part_i.values) CHECK(v == Approx(0.0).margin(1e-12));
    for (double v : zero.part_ii.values) CHECK(v == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("rotated paths behave the same way") {
  const double omega = pi / 3.0;
  const CandidateSequence path = geometric_path(omega, 10);
  const DecaySequenceReport mass = verify_masslemma_i(2.0, path, pi / 2.0);
  CHECK(mass.passed);
  const DecaySequenceReport loc = verify_localization(
      make_symbol(SymbolSpec::Log1(), 256), 2.0, geometric_path(omega, 5, 0.25));
  CHECK(loc.passed);
}

TEST_CASE("log-kernel L2 distances") {
  SECTION("equal base points give zero") {
    CHECK(log_kernel_l2_distance(0.25, 0.25) == 0.0);
  }
  SECTION("dilog form matches the truncated Parseval sum at moderate depth") {
    const double du = 1.0 / 16.0, dv = 1.0 / 4.0;
    const double exact = log_kernel_l2_distance(du, dv);
    const double partial = std::sqrt(oracles::parseval_l2_partial(1.0 - du, 1.0 - dv, 4000));
    CHECK(exact == Approx(partial).epsilon(1e-9));
  }
  SECTION("dilog form matches circle quadrature of |h|^2") {
    const AnalyticFn h = make_window_difference(1.0 / 16.0, 1.0 / 4.0);
    const double quad = hardy_norm(h, 2.0, {.quad = {1e-12, 1e-18}}).value;
    CHECK(quad == Approx(log_kernel_l2_distance(1.0 / 16.0, 1.0 / 4.0)).margin(1e-9));
  }
}

TEST_CASE("Carleson-window sequence statistics") {
  SECTION("non-decreasing schedules are rejected") {
    CHECK_THROWS_AS(leibov_sequence_stats({0.25, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(leibov_sequence_stats({0.25}), std::invalid_argument);
  }
  SECTION("squared-shrinkage schedule: l2 decays, star ratio stays bounded") {
    std::vector<double> arcs{0.25};
    while (arcs.size() < 6) arcs.push_back(arcs.back() * arcs.back());
    const LeibovStats stats = leibov_sequence_stats(arcs);
    REQUIRE(stats.l2s.size() == 5);
    for (std::size_t n = 1; n < stats.l2s.size(); ++n)
      CHECK(stats.l2s[n] < stats.l2s[n - 1]);
    CHECK(stats.l2s.back() < 0.2 * stats.l2s.front());
    double lo = HUGE_VAL, hi = 0.0;
    for (double s : stats.stars) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    CHECK(hi / lo <= 10.0);
  }
}
