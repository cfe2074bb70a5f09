// hvl: command-line front end.
//
// Subcommands: norm, seminorm, profile, lemma, select, embed, report.
// JSON artifacts carry {schema_version, config, result}; profiles and decay
// sequences are also written as label,value,error_bound CSV.  Exit status:
// 0 pass, 1 assertion/selection failure, 2 usage or precondition error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hvl/hvl.hpp"

namespace {

using hvl::cd;
using hvl::json;

std::string timestamp_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json base_config(const std::string& command) {
  return json{{"command", command}, {"timestamp", timestamp_now()}};
}

void emit(const std::string& out_path, const json& envelope) {
  if (!out_path.empty()) hvl::write_json_file(out_path, envelope);
}

std::vector<cd> parse_alpha(const std::string& text) {
  std::vector<cd> alpha;
  if (text.empty()) return alpha;
  if (text.find(';') != std::string::npos) {
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
      const auto comma = pair.find(',');
      const double re = std::stod(pair.substr(0, comma));
      const double im = comma == std::string::npos ? 0.0 : std::stod(pair.substr(comma + 1));
      alpha.emplace_back(re, im);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) alpha.emplace_back(std::stod(item), 0.0);
  }
  return alpha;
}

hvl::DiscPoint point_from_flags(double a_mod, double a_gap, double a_arg) {
  if (a_gap > 0.0) return hvl::DiscPoint(a_gap, a_arg);
  if (a_mod == 0.0) return hvl::DiscPoint::origin();
  return hvl::DiscPoint(1.0 - a_mod, a_arg);
}

struct CommonPath {
  std::size_t count = 16;
  double ratio = 0.5;
  double omega = 0.0;

  hvl::CandidateSequence make() const { return hvl::geometric_path(omega, count, ratio); }

  json config() const {
    return json{{"count", count}, {"ratio", ratio}, {"omega", omega}};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hvl: numerical laboratory for the Volterra operator on Hardy spaces"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (same as HVL_THREADS)");

  // ---- norm ----
  auto* norm_cmd = app.add_subcommand("norm", "H^p norm of a symbol or test function");
  std::string norm_symbol = "testfn";
  double norm_a = 0.0, norm_a_gap = 0.0, norm_a_arg = 0.0, norm_p = 2.0, norm_r = 0.0;
  std::int64_t norm_M = 64;
  int norm_N = 4096;
  std::string norm_out;
  norm_cmd->add_option("--symbol", norm_symbol, "testfn | log1 | monomial:k | poly:… | carleson:u");
  norm_cmd->add_option("--a", norm_a, "test-function point modulus (real direction)");
  norm_cmd->add_option("--a-gap", norm_a_gap, "test-function point boundary gap 1-|a|");
  norm_cmd->add_option("--a-arg", norm_a_arg, "test-function point argument");
  norm_cmd->add_option("--p", norm_p, "exponent p >= 1");
  norm_cmd->add_option("--M", norm_M, "initial sample count (power of two >= 64)");
  norm_cmd->add_option("--r", norm_r, "evaluation radius (default: largest valid)");
  norm_cmd->add_option("--N", norm_N, "truncation degree");
  norm_cmd->add_option("--out", norm_out, "JSON output path");

  // ---- seminorm ----
  auto* semi_cmd = app.add_subcommand("seminorm", "BMOA / VMOA / Bloch / LMOA estimates");
  std::string semi_kind = "bmoa", semi_symbol = "log1", semi_out;
  double semi_q = 2.0;
  int semi_rays = 8, semi_depth = 10, semi_N = 4096;
  semi_cmd->add_option("--kind", semi_kind, "bmoa | vmoa | bloch | lmoa");
  semi_cmd->add_option("--symbol", semi_symbol, "symbol spec");
  semi_cmd->add_option("--q", semi_q, "exponent of the composed mean");
  semi_cmd->add_option("--rays", semi_rays, "grid rays");
  semi_cmd->add_option("--depth", semi_depth, "grid dyadic depth");
  semi_cmd->add_option("--N", semi_N, "truncation degree");
  semi_cmd->add_option("--out", semi_out, "JSON output path");

  // ---- profile ----
  auto* prof_cmd = app.add_subcommand("profile", "norm-limit profile ||T_g f_{a_k}||_p");
  std::string prof_symbol = "log1", prof_out;
  double prof_p = 2.0;
  CommonPath prof_path;
  prof_cmd->add_option("--symbol", prof_symbol, "symbol spec");
  prof_cmd->add_option("--p", prof_p, "exponent");
  prof_cmd->add_option("--path-count", prof_path.count, "path length");
  prof_cmd->add_option("--path-ratio", prof_path.ratio, "gap ratio per step");
  prof_cmd->add_option("--omega", prof_path.omega, "boundary limit argument");
  prof_cmd->add_option("--out", prof_out, "CSV output path (JSON next to it)");

  // ---- lemma ----
  auto* lemma_cmd = app.add_subcommand("lemma", "run a lemma driver");
  std::string lemma_which = "mass1", lemma_symbol = "log1", lemma_out;
  double lemma_p = 2.0, lemma_eps = hvl::pi / 2.0, lemma_threshold = 0.0;
  double lemma_a = 0.0, lemma_a_gap = 0.0, lemma_a_arg = 0.0;
  int lemma_eps_count = 10;
  std::size_t lemma_fixed_k = 2;
  CommonPath lemma_path;
  lemma_cmd->add_option("--which", lemma_which, "mass1 | mass2 | loc | loc2 | leibov");
  lemma_cmd->add_option("--symbol", lemma_symbol, "symbol spec (loc/loc2)");
  lemma_cmd->add_option("--p", lemma_p, "exponent");
  lemma_cmd->add_option("--eps", lemma_eps, "window half-width");
  lemma_cmd->add_option("--threshold", lemma_threshold, "pass threshold (0 = default)");
  lemma_cmd->add_option("--a", lemma_a, "fixed point modulus (mass2)");
  lemma_cmd->add_option("--a-gap", lemma_a_gap, "fixed point gap (mass2)");
  lemma_cmd->add_option("--a-arg", lemma_a_arg, "fixed point argument (mass2)");
  lemma_cmd->add_option("--eps-count", lemma_eps_count, "window schedule length");
  lemma_cmd->add_option("--fixed-k", lemma_fixed_k, "fixed path index (loc2 part ii)");
  lemma_cmd->add_option("--path-count", lemma_path.count, "path length");
  lemma_cmd->add_option("--path-ratio", lemma_path.ratio, "gap ratio per step");
  lemma_cmd->add_option("--omega", lemma_path.omega, "boundary limit argument");
  lemma_cmd->add_option("--out", lemma_out, "CSV output path (JSON next to it)");

  // ---- select ----
  auto* sel_cmd = app.add_subcommand("select", "gliding-hump selection certificate");
  std::string sel_kind = "volterra", sel_symbol = "log1", sel_out = "cert.json";
  double sel_p = 2.0;
  int sel_levels = 6;
  std::uint64_t sel_seed = 0;
  CommonPath sel_path{400, 0.5, 0.0};
  sel_cmd->add_option("--kind", sel_kind, "flat | volterra");
  sel_cmd->add_option("--symbol", sel_symbol, "symbol spec (volterra)");
  sel_cmd->add_option("--p", sel_p, "exponent");
  sel_cmd->add_option("--levels", sel_levels, "number of levels n_max");
  sel_cmd->add_option("--seed", sel_seed, "seed (recorded in the config echo)");
  sel_cmd->add_option("--path-count", sel_path.count, "candidate path length");
  sel_cmd->add_option("--path-ratio", sel_path.ratio, "gap ratio per step");
  sel_cmd->add_option("--omega", sel_path.omega, "boundary limit argument");
  sel_cmd->add_option("--out", sel_out, "certificate JSON path");

  // ---- embed ----
  auto* emb_cmd = app.add_subcommand("embed", "embed a coefficient vector through a certificate");
  std::string emb_cert = "cert.json", emb_alpha = "1", emb_out;
  emb_cmd->add_option("--cert", emb_cert, "certificate JSON");
  emb_cmd->add_option("--alpha", emb_alpha, "coefficients: re,re,… or re,im;re,im;…");
  emb_cmd->add_option("--out", emb_out, "JSON output path");

  // ---- report ----
  auto* rep_cmd = app.add_subcommand("report", "embedding-bound trials from a certificate");
  std::string rep_cert = "cert.json", rep_out = "report.json";
  int rep_trials = 100;
  std::uint64_t rep_seed = 42;
  rep_cmd->add_option("--cert", rep_cert, "volterra certificate JSON");
  rep_cmd->add_option("--trials", rep_trials, "seeded random trials");
  rep_cmd->add_option("--seed", rep_seed, "RNG seed");
  rep_cmd->add_option("--out", rep_out, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    app.exit(e);
    return 2;
  }

  if (threads > 0) {
    setenv("HVL_THREADS", std::to_string(threads).c_str(), 1);
  }

  try {
    // ---------------- norm ----------------
    if (*norm_cmd) {
      json cfg = base_config("norm");
      cfg["symbol"] = norm_symbol;
      cfg["p"] = norm_p;
      cfg["M"] = norm_M;
      cfg["N"] = norm_N;
      hvl::AnalyticFn f = [&] {
        if (norm_symbol == "testfn") {
          const hvl::DiscPoint a = point_from_flags(norm_a, norm_a_gap, norm_a_arg);
          cfg["a"] = hvl::to_json(a);
          return hvl::make_test_function(a, norm_p, norm_N);
        }
        cfg["symbol_spec"] = hvl::to_json(hvl::parse_symbol(norm_symbol));
        return hvl::make_symbol(hvl::parse_symbol(norm_symbol), norm_N);
      }();
      hvl::HardyNormOptions opts;
      opts.samples = norm_M;
      if (norm_r > 0.0) {
        opts.radius = norm_r;
        cfg["r"] = norm_r;
      }
      const hvl::NormEstimate e = hvl::hardy_norm(f, norm_p, opts);
      std::printf("%.6f +- %.2e  (resolution %lld)\n", e.value, e.error_bound,
                  static_cast<long long>(e.resolution));
      emit(norm_out, hvl::make_envelope(cfg, hvl::to_json(e)));
      return 0;
    }

    // ---------------- seminorm ----------------
    if (*semi_cmd) {
      json cfg = base_config("seminorm");
      cfg["kind"] = semi_kind;
      cfg["symbol"] = semi_symbol;
      cfg["q"] = semi_q;
      cfg["rays"] = semi_rays;
      cfg["depth"] = semi_depth;
      const hvl::AnalyticFn g = hvl::make_symbol(hvl::parse_symbol(semi_symbol), semi_N);
      const std::vector<hvl::DiscPoint> grid = hvl::standard_grid(semi_rays, semi_depth);
      json result;
      double headline = 0.0;
      if (semi_kind == "bmoa") {
        const hvl::NormEstimate e = hvl::bmoa_seminorm(g, grid, semi_q);
        headline = e.value;
        result = hvl::to_json(e);
      } else if (semi_kind == "vmoa") {
        std::vector<double> radii;
        for (int j = 1; j <= semi_depth; ++j) radii.push_back(1.0 - std::ldexp(1.0, -j));
        const std::vector<double> d = hvl::vmoa_defect(g, radii, semi_q, semi_rays);
        headline = d.back();
        result = json{{"radii", radii}, {"defect", d}};
      } else if (semi_kind == "bloch") {
        const hvl::NormEstimate e = hvl::bloch_seminorm(g, grid);
        headline = e.value;
        result = hvl::to_json(e);
      } else if (semi_kind == "lmoa") {
        const hvl::LmoaResult r = hvl::lmoa_seminorm(g, grid);
        headline = r.sup.value;
        result = json{{"sup", hvl::to_json(r.sup)}, {"profile", r.profile}};
      } else {
        std::fprintf(stderr, "unknown seminorm kind: %s\n", semi_kind.c_str());
        return 2;
      }
      std::printf("%s(%s) = %.8f\n", semi_kind.c_str(), semi_symbol.c_str(), headline);
      emit(semi_out, hvl::make_envelope(cfg, result));
      return 0;
    }

    // ---------------- profile ----------------
    if (*prof_cmd) {
      json cfg = base_config("profile");
      cfg["symbol"] = prof_symbol;
      cfg["p"] = prof_p;
      cfg["path"] = prof_path.config();
      const hvl::AnalyticFn g = hvl::make_symbol(hvl::parse_symbol(prof_symbol), 4096);
      const hvl::CandidateSequence path = prof_path.make();
      const hvl::NormLimitProfile prof = hvl::normlimit_profile(g, prof_p, path);
      std::printf("c_hat = %.8f (stabilized: %s)\n", prof.c_hat,
                  prof.stabilized ? "yes" : "no");
      if (!prof_out.empty()) {
        std::vector<double> labels;
        for (std::size_t k = 0; k < prof.norms.size(); ++k) labels.push_back(double(k + 1));
        hvl::write_csv_file(prof_out, labels, prof.norms);
        hvl::write_json_file(prof_out + ".json",
                             hvl::make_envelope(cfg, hvl::to_json(prof)));
      }
      return 0;
    }

    // ---------------- lemma ----------------
    if (*lemma_cmd) {
      json cfg = base_config("lemma");
      cfg["which"] = lemma_which;
      cfg["p"] = lemma_p;
      hvl::LemmaOptions lopts;
      json result;
      bool passed = true;
      auto finish_decay = [&](const hvl::DecaySequenceReport& rep) {
        result = hvl::to_json(rep);
        passed = rep.passed;
        std::printf("%s: final %.3e vs threshold %.3e -> %s\n", rep.what.c_str(),
                    rep.final_value, rep.threshold, rep.passed ? "pass" : "FAIL");
        if (!lemma_out.empty()) hvl::write_csv_file(lemma_out, rep.labels, rep.values);
      };
      if (lemma_which == "mass1") {
        lopts.threshold = lemma_threshold > 0.0 ? lemma_threshold : 1e-3;
        cfg["eps"] = lemma_eps;
        cfg["path"] = lemma_path.config();
        finish_decay(hvl::verify_masslemma_i(lemma_p, lemma_path.make(), lemma_eps, lopts));
      } else if (lemma_which == "mass2") {
        lopts.threshold = lemma_threshold > 0.0 ? lemma_threshold : 1e-3;
        const hvl::DiscPoint a = point_from_flags(lemma_a, lemma_a_gap, lemma_a_arg);
        cfg["a"] = hvl::to_json(a);
        std::vector<double> schedule;
        for (int j = 1; j <= lemma_eps_count; ++j)
          schedule.push_back(hvl::pi * std::ldexp(1.0, -j));
        finish_decay(hvl::verify_masslemma_ii(lemma_p, a, schedule, std::nullopt, lopts));
      } else if (lemma_which == "loc") {
        lopts.threshold = lemma_threshold > 0.0 ? lemma_threshold : 5e-2;
        cfg["symbol"] = lemma_symbol;
        cfg["path"] = lemma_path.config();
        const hvl::AnalyticFn g = hvl::make_symbol(hvl::parse_symbol(lemma_symbol), 4096);
        finish_decay(hvl::verify_localization(g, lemma_p, lemma_path.make(), lopts));
      } else if (lemma_which == "loc2") {
        lopts.threshold = lemma_threshold > 0.0 ? lemma_threshold : 1e-2;
        cfg["symbol"] = lemma_symbol;
        cfg["eps"] = lemma_eps;
        cfg["path"] = lemma_path.config();
        const hvl::AnalyticFn g = hvl::make_symbol(hvl::parse_symbol(lemma_symbol), 4096);
        const hvl::Localization2Report rep = hvl::verify_localization2(
            g, lemma_p, lemma_path.make(), lemma_eps, lemma_fixed_k, {}, lopts);
        result = hvl::to_json(rep);
        passed = rep.part_i.passed && rep.part_ii.passed;
        std::printf("localization2: part(i) %s, part(ii) %s\n",
                    rep.part_i.passed ? "pass" : "FAIL",
                    rep.part_ii.passed ? "pass" : "FAIL");
        if (!lemma_out.empty()) {
          hvl::write_csv_file(lemma_out, rep.part_i.labels, rep.part_i.values);
          hvl::write_csv_file(lemma_out + ".ii.csv", rep.part_ii.labels, rep.part_ii.values);
        }
      } else if (lemma_which == "leibov") {
        std::vector<double> arcs{0.25};
        while (int(arcs.size()) < std::max(2, lemma_eps_count))
          arcs.push_back(arcs.back() * arcs.back());
        cfg["arcs"] = arcs;
        const hvl::LeibovStats stats = hvl::leibov_sequence_stats(arcs);
        result = hvl::to_json(stats);
        std::printf("leibov: %zu terms, l2 %0.4f -> %0.3e\n", stats.l2s.size(),
                    stats.l2s.front(), stats.l2s.back());
        if (!lemma_out.empty()) {
          std::vector<double> labels;
          for (std::size_t i = 0; i < stats.l2s.size(); ++i) labels.push_back(double(i + 1));
          hvl::write_csv_file(lemma_out, labels, stats.l2s);
        }
      } else {
        std::fprintf(stderr, "unknown lemma: %s\n", lemma_which.c_str());
        return 2;
      }
      if (!lemma_out.empty())
        hvl::write_json_file(lemma_out + ".json", hvl::make_envelope(cfg, result));
      return passed ? 0 : 1;
    }

    // ---------------- select ----------------
    if (*sel_cmd) {
      json cfg = base_config("select");
      cfg["kind"] = sel_kind;
      cfg["p"] = sel_p;
      cfg["levels"] = sel_levels;
      cfg["seed"] = sel_seed;
      cfg["path"] = sel_path.config();
      const hvl::CandidateSequence path = sel_path.make();
      hvl::SelectionOutcome outcome = [&] {
        if (sel_kind == "flat") return hvl::select_flat(sel_p, path, sel_levels);
        cfg["symbol"] = sel_symbol;
        return hvl::select_volterra(hvl::parse_symbol(sel_symbol), sel_p, path, sel_levels);
      }();
      emit(sel_out, hvl::make_envelope(cfg, hvl::to_json(outcome)));
      if (outcome.ok()) {
        std::printf("selection passed: %d levels, min margin %.3e%s\n",
                    outcome.certificate->level_count(), outcome.certificate->min_margin(),
                    sel_out.empty() ? "" : (" -> " + sel_out).c_str());
        return 0;
      }
      std::printf("selection FAILED at level %d, %s: %s\n", outcome.failure->level,
                  outcome.failure->condition.c_str(), outcome.failure->detail.c_str());
      return 1;
    }

    // ---------------- embed ----------------
    if (*emb_cmd) {
      json cfg = base_config("embed");
      cfg["cert"] = emb_cert;
      cfg["alpha"] = emb_alpha;
      const json cj = hvl::read_json_file(emb_cert);
      const hvl::SelectionCertificate cert =
          hvl::certificate_from_json(cj.at("result").at("certificate"));
      const std::vector<cd> alpha = parse_alpha(emb_alpha);
      hvl::EmbedResult res = [&] {
        if (cert.kind == hvl::SelectionKind::flat) return hvl::embed_flat(cert, alpha);
        const hvl::AnalyticFn g = hvl::make_symbol(*cert.symbol, 4096);
        return hvl::embed_volterra(cert, g, alpha);
      }();
      std::printf("||embedded||_p = %.8f, certified bound %.8f -> %s\n", res.norm, res.bound,
                  res.within_bound ? "pass" : "FAIL");
      json result{{"norm", res.norm},
                  {"bound", res.bound},
                  {"within_bound", res.within_bound},
                  {"lp_norm", hvl::lp_norm(alpha, cert.p)}};
      emit(emb_out, hvl::make_envelope(cfg, result));
      return res.within_bound ? 0 : 1;
    }

    // ---------------- report ----------------
    if (*rep_cmd) {
      json cfg = base_config("report");
      cfg["cert"] = rep_cert;
      cfg["trials"] = rep_trials;
      cfg["seed"] = rep_seed;
      const json cj = hvl::read_json_file(rep_cert);
      const hvl::SelectionCertificate vol =
          hvl::certificate_from_json(cj.at("result").at("certificate"));
      const hvl::SelectionOutcome flat = hvl::measure_flat_certificate(vol);
      if (!flat.ok()) {
        std::printf("flat re-measurement FAILED at level %d: %s\n", flat.failure->level,
                    flat.failure->detail.c_str());
        return 1;
      }
      const hvl::EmbeddingReport rep =
          hvl::isomorphism_report(*flat.certificate, vol, rep_trials, rep_seed);
      emit(rep_out, hvl::make_envelope(cfg, hvl::to_json(rep)));
      std::printf("report: min_ratio %.6f, restriction_lower %.6f vs required %.6f -> %s\n",
                  rep.min_ratio, rep.restriction_lower, rep.restriction_required,
                  rep.passed ? "pass" : "FAIL");
      return rep.passed ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
