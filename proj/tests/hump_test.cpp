#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hvl/hump.hpp"
#include "hvl/io.hpp"
#include "support/oracles.hpp"

using namespace hvl;
using Catch::Approx;

namespace {

// Shared small certificates; selection is the expensive part of this suite.
const CandidateSequence& test_path() {
  static const CandidateSequence path = geometric_path(0.0, 200);
  return path;
}

const SelectionCertificate& flat3() {
  static const SelectionCertificate cert = [] {
    const SelectionOutcome out = select_flat(2.0, test_path(), 3);
    REQUIRE(out.ok());
    return *out.certificate;
  }();
  return cert;
}

const SelectionCertificate& vol3() {
  static const SelectionCertificate cert = [] {
    const SelectionOutcome out = select_volterra(SymbolSpec::Log1(), 2.0, test_path(), 3);
    REQUIRE(out.ok());
    return *out.certificate;
  }();
  return cert;
}

}  // namespace

TEST_CASE("single-level selection has a vacuous condition (i)") {
  const SelectionOutcome out = select_flat(2.0, geometric_path(0.0, 8), 1);
  REQUIRE(out.ok());
  REQUIRE(out.certificate->levels.size() == 1);
  CHECK(out.certificate->levels[0].cond_i_values.empty());
  CHECK(out.certificate->levels[0].margin_ii() > 0.0);
}

TEST_CASE("flat selection: margins, geometry, and the harmonic-measure oracle") {
  const SelectionCertificate& cert = flat3();
  CHECK(cert.min_margin() > 0.0);
  double prev_eps = HUGE_VAL, prev_gap = 2.0;
  for (const LevelRecord& lv : cert.levels) {
    CHECK(lv.epsilon < prev_eps);
    CHECK(lv.b.gap < prev_gap);
    prev_eps = lv.epsilon;
    prev_gap = lv.b.gap;
    // every stored value against the independent arctan closed form
    const Arc window(0.0, lv.epsilon);
    const double inside = oracles::harmonic_measure(lv.b, window);
    CHECK(lv.cond_ii_value == Approx(std::sqrt(1.0 - inside)).margin(1e-6));
    CHECK(lv.cond_iii_value == Approx(std::sqrt(inside)).margin(1e-6));
  }
  for (std::size_t n = 1; n < cert.levels.size(); ++n) {
    const LevelRecord& lv = cert.levels[n];
    REQUIRE(lv.cond_i_values.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
      const double oracle =
          oracles::harmonic_measure(cert.levels[j].b, Arc(0.0, lv.epsilon));
      CHECK(lv.cond_i_values[j] == Approx(std::sqrt(oracle)).margin(1e-6));
    }
  }
}

TEST_CASE("sparse candidate lists are rejected up front") {
  CHECK_THROWS_AS(select_flat(2.0, geometric_path(0.0, 8), 6), std::invalid_argument);
}

TEST_CASE("shallow candidate lists fail at the level whose threshold is unreachable") {
  // thirty points, all with |a| <= 0.8: moduli increase but never approach 1
  std::vector<DiscPoint> pts;
  double gap = 0.5;
  for (int k = 0; k < 30; ++k, gap *= 0.97) pts.emplace_back(gap, 0.0);
  const CandidateSequence shallow(0.0, std::move(pts), "shallow");
  const SelectionOutcome out = select_flat(2.0, shallow, 6);
  REQUIRE_FALSE(out.ok());
  CHECK(out.failure->level >= 1);
  CHECK(out.failure->condition.find("condition (ii)") != std::string::npos);
}

TEST_CASE("volterra selection carries the paper constants") {
  const SelectionCertificate& cert = vol3();
  CHECK(cert.delta == Approx(0.125));                 // 2^{-2-2/p} at p = 2
  CHECK(cert.delta_equation_residual() == 0.0);       // dyadic, exact
  CHECK(cert.c_hat == Approx(1.6651).epsilon(2e-3));
  CHECK(cert.min_margin() > 0.0);
  for (const LevelRecord& lv : cert.levels) {
    CHECK(lv.cond_iii_value >= 0.5 * cert.c_hat);
    CHECK(lv.cond_iii_value <= 2.0 * cert.c_hat);
    CHECK(lv.threshold == Approx(std::pow(4.0, -lv.n) * cert.delta * cert.c_hat));
  }
}

TEST_CASE("delta equation residual across exponents") {
  for (double p : {1.0, 2.0}) {
    SelectionCertificate c;
    c.p = p;
    c.delta = std::pow(2.0, -2.0 - 2.0 / p);
    CHECK(c.delta_equation_residual() == 0.0);
  }
  SelectionCertificate c43;
  c43.p = 4.0 / 3.0;
  c43.delta = std::pow(2.0, -2.0 - 2.0 / c43.p);
  CHECK(c43.delta_equation_residual() < 1e-16);
}

TEST_CASE("compact symbols are refused at the stability gate") {
  const SelectionOutcome out = select_volterra(SymbolSpec::Monomial(1), 2.0, test_path(), 3);
  REQUIRE_FALSE(out.ok());
  CHECK(out.failure->level == 0);
  CHECK(out.failure->condition == "c_hat stability");
  CHECK_THROWS_AS(select_volterra(SymbolSpec::Monomial(0), 2.0, test_path(), 3),
                  std::invalid_argument);
}

TEST_CASE("certificate replay at doubled resolution stays within margins") {
  const ReplayReport rep = replay_certificate(vol3());
  CHECK(rep.passed);
  CHECK(rep.worst_shift_over_margin < 0.1);
  CHECK(rep.shifts.size() == 2 + 3 + 4);  // sum over levels of (n-1) + 2 values
}

TEST_CASE("flat conditions can be re-measured on the volterra points") {
  const SelectionOutcome flat = measure_flat_certificate(vol3());
  REQUIRE(flat.ok());
  CHECK(flat.certificate->min_margin() > 0.0);
  for (std::size_t j = 0; j < flat.certificate->levels.size(); ++j) {
    CHECK(flat.certificate->levels[j].b.gap == vol3().levels[j].b.gap);
    CHECK(flat.certificate->levels[j].epsilon == vol3().levels[j].epsilon);
  }
}

TEST_CASE("flat embedding") {
  const SelectionCertificate& cert = flat3();
  SECTION("a single spike reproduces the unit-norm test function") {
    const EmbedResult res = embed_flat(cert, {cd{1.0, 0.0}});
    CHECK(res.norm == Approx(1.0).margin(1e-6));
    CHECK(res.within_bound);
  }
  SECTION("the zero vector embeds to the zero function") {
    const EmbedResult res = embed_flat(cert, {cd{0, 0}, cd{0, 0}});
    CHECK(res.norm == 0.0);
    CHECK(res.within_bound);
  }
  SECTION("a flat uniform vector satisfies the upper bound") {
    const double w = 1.0 / std::sqrt(3.0);
    const EmbedResult res = embed_flat(cert, {cd{w, 0}, cd{w, 0}, cd{w, 0}});
    CHECK(res.within_bound);
    CHECK(res.norm <= std::pow(2.0, 1.5) + 1e-9);
    CHECK(res.norm == Approx(1.0).epsilon(0.05));  // near-disjoint humps
  }
  SECTION("support wider than the certificate is rejected") {
    CHECK_THROWS_AS(embed_flat(cert, std::vector<cd>(4, cd{1.0, 0.0})),
                    std::invalid_argument);
  }
  SECTION("kind mismatch is rejected") {
    CHECK_THROWS_AS(embed_flat(vol3(), {cd{1.0, 0.0}}), std::invalid_argument);
  }
}

TEST_CASE("volterra embedding") {
  const SelectionCertificate& cert = vol3();
  const AnalyticFn g = make_symbol(SymbolSpec::Log1(), 4096);
  SECTION("single spike lands in the certificate window") {
    const EmbedResult res = embed_volterra(cert, g, {cd{1.0, 0.0}});
    const LevelRecord& lv = cert.levels[0];
    const double hi = std::pow(std::pow(lv.cond_iii_value, 2.0) +
                               std::pow(lv.cond_ii_value, 2.0), 0.5);
    CHECK(res.norm >= 0.5 * cert.c_hat - 1e-9);
    CHECK(res.norm <= hi * (1.0 + 1e-6));
    CHECK(res.within_bound);
  }
  SECTION("zero vector") {
    const EmbedResult res = embed_volterra(cert, g, {cd{0, 0}});
    CHECK(res.norm == 0.0);
    CHECK(res.within_bound);
  }
}

TEST_CASE("isomorphism report") {
  const SelectionOutcome flat = measure_flat_certificate(vol3());
  REQUIRE(flat.ok());

  SECTION("zero trials is a defined vacuous failure") {
    const EmbeddingReport rep = isomorphism_report(*flat.certificate, vol3(), 0, 1);
    CHECK_FALSE(rep.passed);
  }
  SECTION("spikes and seeded trials satisfy both bounds") {
    const EmbeddingReport rep = isomorphism_report(*flat.certificate, vol3(), 20, 7);
    CHECK(rep.all_within_bounds);
    CHECK(rep.passed);
    CHECK(rep.restriction_lower >= rep.restriction_required);
    // single spikes realize || T_g f_{b_n} ||_p >= c_hat / 2
    for (std::size_t j = 0; j < vol3().levels.size(); ++j) {
      CHECK(rep.records[j].is_spike);
      CHECK(rep.records[j].ratio_u >= 0.5 * vol3().c_hat - 1e-9);
    }
    // the same seed reproduces the same numbers
    const EmbeddingReport again = isomorphism_report(*flat.certificate, vol3(), 20, 7);
    CHECK(again.min_ratio == rep.min_ratio);
    CHECK(again.restriction_lower == rep.restriction_lower);
  }
  SECTION("mismatched certificates are rejected") {
    CHECK_THROWS_AS(isomorphism_report(*flat.certificate, *flat.certificate, 5, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("certificate JSON round-trip") {
  const SelectionCertificate& cert = vol3();
  const json j = to_json(cert);
  const SelectionCertificate back = certificate_from_json(j);
  CHECK(back.kind == cert.kind);
  CHECK(back.p == cert.p);
  CHECK(back.c_hat == cert.c_hat);
  CHECK(back.delta == cert.delta);
  REQUIRE(back.levels.size() == cert.levels.size());
  for (std::size_t n = 0; n < cert.levels.size(); ++n) {
    CHECK(back.levels[n].b.gap == cert.levels[n].b.gap);
    CHECK(back.levels[n].epsilon == cert.levels[n].epsilon);
    CHECK(back.levels[n].cond_ii_value == cert.levels[n].cond_ii_value);
  }
  CHECK(back.path.size() == cert.path.size());
  REQUIRE(back.symbol.has_value());
  CHECK(back.symbol->kind == SymbolSpec::Kind::log1);
}
