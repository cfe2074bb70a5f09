// JSON / CSV serialization of certificates, reports and run configurations.

#ifndef HVL_IO_HPP
#define HVL_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hvl/analytic.hpp"
#include "hvl/candidate_path.hpp"
#include "hvl/hump.hpp"
#include "hvl/lemma.hpp"
#include "hvl/quadrature.hpp"
#include "hvl/volterra.hpp"

namespace hvl {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

// --- primitives -------------------------------------------------------------

inline json to_json(const cd& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline cd cd_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline json to_json(const DiscPoint& a) {
  return json{{"gap", a.gap}, {"phi", a.phi}};
}

inline DiscPoint discpoint_from_json(const json& j) {
  return DiscPoint(j.at("gap").get<double>(), j.at("phi").get<double>());
}

inline json to_json(const CandidateSequence& path) {
  json pts = json::array();
  for (const DiscPoint& a : path.points) pts.push_back(to_json(a));
  return json{{"omega_arg", path.omega_arg}, {"label", path.label}, {"points", pts}};
}

inline CandidateSequence candidate_sequence_from_json(const json& j) {
  std::vector<DiscPoint> pts;
  for (const json& pj : j.at("points")) pts.push_back(discpoint_from_json(pj));
  return CandidateSequence(j.at("omega_arg").get<double>(), std::move(pts),
                           j.value("label", std::string{}));
}

inline json to_json(const SymbolSpec& s) {
  json j{{"kind", s.name()}};
  switch (s.kind) {
    case SymbolSpec::Kind::log1: j["kind"] = "log1"; break;
    case SymbolSpec::Kind::monomial:
      j["kind"] = "monomial";
      j["power"] = s.power;
      break;
    case SymbolSpec::Kind::polynomial:
    case SymbolSpec::Kind::custom: {
      j["kind"] = s.kind == SymbolSpec::Kind::polynomial ? "polynomial" : "custom";
      json c = json::array();
      for (const cd& x : s.coeffs) c.push_back(to_json(x));
      j["coeffs"] = c;
      break;
    }
    case SymbolSpec::Kind::carleson_log:
      j["kind"] = "carleson";
      j["u"] = to_json(s.u);
      break;
  }
  return j;
}

inline SymbolSpec symbol_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "log1") return SymbolSpec::Log1();
  if (kind == "monomial") return SymbolSpec::Monomial(j.at("power").get<int>());
  if (kind == "carleson") return SymbolSpec::CarlesonLog(discpoint_from_json(j.at("u")));
  std::vector<cd> coeffs;
  for (const json& cj : j.at("coeffs")) coeffs.push_back(cd_from_json(cj));
  if (kind == "polynomial") return SymbolSpec::Polynomial(std::move(coeffs));
  if (kind == "custom") return SymbolSpec::Custom(std::move(coeffs));
  throw std::invalid_argument("symbol_from_json: unknown kind " + kind);
}

/// Parse the CLI notation: log1 | monomial:k | poly:a,b,c | carleson:x[,y]
/// | custom:a,b,c.
inline SymbolSpec parse_symbol(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_list = [](const std::string& s) {
    std::vector<cd> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.emplace_back(std::stod(item), 0.0);
    return out;
  };
  if (head == "log1") return SymbolSpec::Log1();
  if (head == "monomial") return SymbolSpec::Monomial(std::stoi(args));
  if (head == "poly" || head == "polynomial") return SymbolSpec::Polynomial(parse_list(args));
  if (head == "custom") return SymbolSpec::Custom(parse_list(args));
  if (head == "carleson") {
    const std::vector<cd> v = parse_list(args);
    if (v.empty()) throw std::invalid_argument("carleson symbol needs a base point");
    const double re = v[0].real();
    const double im = v.size() > 1 ? v[1].real() : 0.0;
    return SymbolSpec::CarlesonLog(cd{re, im});
  }
  throw std::invalid_argument("unknown symbol spec: " + text);
}

// --- estimates and reports ---------------------------------------------------

inline json to_json(const NormEstimate& e) {
  return json{{"value", e.value},
              {"resolution", e.resolution},
              {"error_bound", e.error_bound},
              {"converged", e.converged}};
}

inline json to_json(const DecaySequenceReport& r) {
  return json{{"labels", r.labels},
              {"values", r.values},
              {"eventually_decreasing", r.eventually_decreasing},
              {"decreasing_from", r.decreasing_from},
              {"final_value", r.final_value},
              {"threshold", r.threshold},
              {"passed", r.passed},
              {"what", r.what}};
}

inline json to_json(const Localization2Report& r) {
  return json{{"part_i", to_json(r.part_i)}, {"part_ii", to_json(r.part_ii)}};
}

inline json to_json(const LeibovStats& s) {
  return json{{"arcs", s.arcs}, {"stars", s.stars}, {"l2s", s.l2s}};
}

inline json to_json(const NormLimitProfile& p) {
  json pts = json::array();
  for (const DiscPoint& a : p.points) pts.push_back(to_json(a));
  return json{{"points", pts},
              {"norms", p.norms},
              {"c_hat", p.c_hat},
              {"stabilized", p.stabilized},
              {"path_label", p.path_label}};
}

inline json to_json(const VolterraBackendReport& r) {
  json pts = json::array();
  for (const cd& z : r.sample_points) pts.push_back(to_json(z));
  return json{{"max_abs_discrepancy", r.max_abs_discrepancy}, {"sample_points", pts}};
}

// --- certificates -------------------------------------------------------------

inline json to_json(const LevelRecord& lv) {
  return json{{"n", lv.n},
              {"b", to_json(lv.b)},
              {"candidate_index", lv.candidate_index},
              {"epsilon", lv.epsilon},
              {"epsilon_trials", lv.epsilon_trials},
              {"candidate_trials", lv.candidate_trials},
              {"cond_i_values", lv.cond_i_values},
              {"cond_ii_value", lv.cond_ii_value},
              {"cond_iii_value", lv.cond_iii_value},
              {"threshold", lv.threshold},
              {"window_lo", lv.window_lo},
              {"window_hi", lv.window_hi},
              {"margin_i", lv.cond_i_values.empty() ? HUGE_VAL : lv.margin_i()},
              {"margin_ii", lv.margin_ii()},
              {"margin_iii", lv.margin_iii()}};
}

inline LevelRecord level_from_json(const json& j) {
  LevelRecord lv;
  lv.n = j.at("n").get<int>();
  lv.b = discpoint_from_json(j.at("b"));
  lv.candidate_index = j.at("candidate_index").get<std::int64_t>();
  lv.epsilon = j.at("epsilon").get<double>();
  lv.epsilon_trials = j.value("epsilon_trials", 0);
  lv.candidate_trials = j.value("candidate_trials", 0);
  lv.cond_i_values = j.at("cond_i_values").get<std::vector<double>>();
  lv.cond_ii_value = j.at("cond_ii_value").get<double>();
  lv.cond_iii_value = j.at("cond_iii_value").get<double>();
  lv.threshold = j.at("threshold").get<double>();
  lv.window_lo = j.at("window_lo").get<double>();
  lv.window_hi = j.at("window_hi").get<double>();
  return lv;
}

inline json to_json(const SelectionCertificate& c) {
  json levels = json::array();
  for (const LevelRecord& lv : c.levels) levels.push_back(to_json(lv));
  json j{{"kind", to_string(c.kind)},
         {"p", c.p},
         {"c_hat", c.c_hat},
         {"delta", c.delta},
         {"levels", levels},
         {"path", to_json(c.path)},
         {"path_label", c.path_label},
         {"min_margin", c.min_margin()},
         {"passed", true}};
  if (c.symbol) j["symbol"] = to_json(*c.symbol);
  return j;
}

inline SelectionCertificate certificate_from_json(const json& j) {
  SelectionCertificate c;
  c.kind = j.at("kind").get<std::string>() == "flat" ? SelectionKind::flat
                                                     : SelectionKind::volterra;
  c.p = j.at("p").get<double>();
  c.c_hat = j.at("c_hat").get<double>();
  c.delta = j.at("delta").get<double>();
  for (const json& lj : j.at("levels")) c.levels.push_back(level_from_json(lj));
  c.path = candidate_sequence_from_json(j.at("path"));
  c.path_label = j.value("path_label", std::string{});
  if (j.contains("symbol")) c.symbol = symbol_from_json(j.at("symbol"));
  c.validate();
  return c;
}

inline json to_json(const SelectionFailure& f) {
  return json{{"level", f.level}, {"condition", f.condition}, {"detail", f.detail}};
}

inline json to_json(const SelectionOutcome& o) {
  json j{{"passed", o.ok()}};
  if (o.certificate) j["certificate"] = to_json(*o.certificate);
  if (o.failure) j["failure"] = to_json(*o.failure);
  return j;
}

inline json to_json(const ReplayReport& r) {
  return json{{"shifts", r.shifts},
              {"margins", r.margins},
              {"worst_shift_over_margin", r.worst_shift_over_margin},
              {"passed", r.passed}};
}

inline json to_json(const TrialRecord& t) {
  json alpha = json::array();
  for (const cd& x : t.alpha) alpha.push_back(to_json(x));
  return json{{"alpha", alpha},          {"lp", t.lp},
              {"v_norm", t.v_norm},      {"u_norm", t.u_norm},
              {"ratio_u", t.ratio_u},    {"ratio_v", t.ratio_v},
              {"restriction", t.restriction}, {"within_bounds", t.within_bounds},
              {"is_spike", t.is_spike}};
}

inline json to_json(const EmbeddingReport& r) {
  json recs = json::array();
  for (const TrialRecord& t : r.records) recs.push_back(to_json(t));
  return json{{"certificate_id", r.certificate_id},
              {"p", r.p},
              {"c_hat", r.c_hat},
              {"trials", r.trials},
              {"seed", r.seed},
              {"records", recs},
              {"min_ratio", r.min_ratio},
              {"max_ratio", r.max_ratio},
              {"bound_upper", r.bound_upper},
              {"bound_lower", r.bound_lower},
              {"restriction_lower", r.restriction_lower},
              {"restriction_required", r.restriction_required},
              {"all_within_bounds", r.all_within_bounds},
              {"passed", r.passed}};
}

// --- files -------------------------------------------------------------------

/// {schema_version, config, result} envelope shared by all JSON artifacts.
inline json make_envelope(json config, json result) {
  return json{{"schema_version", schema_version},
              {"config", std::move(config)},
              {"result", std::move(result)}};
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << j.dump(2) << "\n";
}

inline json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  json j;
  is >> j;
  return j;
}

/// CSV with the fixed header label,value,error_bound.
inline void write_csv_file(const std::string& path, const std::vector<double>& labels,
                           const std::vector<double>& values,
                           const std::vector<double>& errors = {}) {
  if (labels.size() != values.size())
    throw std::invalid_argument("write_csv_file: ragged columns");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "label,value,error_bound\n";
  os.precision(17);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i] << "," << values[i] << ","
       << (i < errors.size() ? errors[i] : 0.0) << "\n";
  }
}

}  // namespace hvl

#endif  // HVL_IO_HPP
