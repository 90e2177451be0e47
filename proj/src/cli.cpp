#include "kwise/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "kwise/cayley.hpp"
#include "kwise/circle.hpp"
#include "kwise/error.hpp"
#include "kwise/matching.hpp"
#include "kwise/permutation.hpp"
#include "kwise/search.hpp"

namespace kwise {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    throw InvalidParameter("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw InvalidParameter("bad boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

std::string members_text(ESet s) {
  std::string out;
  for (int v : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

Json family_json(const SetFamily& fam) {
  Json arr = Json::array();
  for (const auto& s : fam) arr.push_back(members_text(s));
  return arr;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

double rounded(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

Json config_json(const ExperimentConfig& c) {
  return Json{{"command", c.command},   {"n", c.n},
              {"r", c.r},               {"k", c.k},
              {"m", c.m},               {"v", c.v},
              {"epsilon", c.epsilon},   {"alpha", c.alpha},
              {"alpha-n", c.alpha_n},   {"mode", c.mode},
              {"rule", c.rule},         {"scope", c.scope},
              {"family", c.family},     {"drop", c.drop},
              {"perturbations", c.perturbations},
              {"iterations", c.iterations},
              {"restarts", c.restarts}, {"witnesses", c.witnesses},
              {"timing", c.timing},     {"output", c.output},
              {"format", c.format},     {"seed", c.seed},
              {"threads", c.threads}};
}

struct Outcome {
  Json result = Json::object();
  bool falsified = false;
  std::function<void(std::ostream&)> table;  // command-specific CSV body
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

void require_nrk(const ExperimentConfig& c) {
  require(c.n >= 1 && c.n <= kMaxGround, "--n must be in [1, 64]");
  require(c.r >= 1, "--r must be positive");
  require(c.k >= 2, "--k must be at least 2");
}

SetFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open family file '" + path + "'");
  return read_family(in);
}

SetFamily drop_members(const SetFamily& fam, int drop, std::uint64_t seed) {
  require(drop >= 0 && static_cast<std::size_t>(drop) <= fam.size(), "--drop must be in [0, |F|]");
  std::vector<ESet> keep(fam.begin(), fam.end());
  std::mt19937_64 rng(seed);
  std::shuffle(keep.begin(), keep.end(), rng);
  keep.resize(keep.size() - static_cast<std::size_t>(drop));
  return SetFamily(fam.ground(), fam.r(), keep);
}

Outcome cmd_verify_frankl(const ExperimentConfig& c) {
  require_nrk(c);
  require(c.r <= c.n, "--r must be at most --n");
  const auto v = verify_frankl(c.n, c.r, c.k, c.threads);
  Outcome o;
  o.result = Json{{"n", v.n},
                  {"r", v.r},
                  {"k", v.k},
                  {"regime", std::string(to_string(v.regime))},
                  {"max_size", v.witness.size},
                  {"bound", v.bound},
                  {"bound_matches", v.bound_matches},
                  {"witness_count", v.witness.witness_count},
                  {"overflow", v.witness.overflow},
                  {"all_stars", optional_bool(v.all_extremal_are_stars)},
                  {"nodes", v.witness.nodes}};
  if (c.witnesses) {
    Json list = Json::array();
    for (std::size_t i = 0; i < v.witness.families.size(); ++i) {
      const auto& cls = v.witness.classes[i];
      list.push_back({{"members", family_json(v.witness.families[i])},
                      {"star", cls.is_star ? Json(cls.center) : Json(nullptr)}});
    }
    o.result["witnesses"] = list;
  }
  o.falsified = !v.bound_matches || v.all_extremal_are_stars == false;
  return o;
}

Outcome cmd_stability_audit(const ExperimentConfig& c) {
  require_nrk(c);
  const Rational eps = Rational::parse(c.epsilon);
  const auto s = stability_audit(c.n, c.r, c.k, eps, c.threads);
  Outcome o;
  Json violations = Json::array();
  for (std::size_t i = 0; i < s.violations.size() && i < 20; ++i) violations.push_back(family_json(s.violations[i]));
  o.result = Json{{"n", s.n},
                  {"r", s.r},
                  {"k", s.k},
                  {"epsilon", s.epsilon.str()},
                  {"delta", s.delta.str()},
                  {"threshold", s.threshold.str()},
                  {"star_threshold", s.star_threshold.str()},
                  {"min_size", s.min_size},
                  {"families_examined", s.families_examined},
                  {"maximal_families", s.maximal_families},
                  {"violation_count", s.violations.size()},
                  {"violations", violations}};
  o.falsified = !s.violations.empty();
  return o;
}

Outcome cmd_circle_census(const ExperimentConfig& c) {
  require(c.k >= 2, "--k must be at least 2");
  SetFamily fam = [&] {
    if (!c.family.empty()) return load_family(c.family);
    require_nrk(c);
    require(c.r < c.n, "--r must be less than --n");
    const int centre = c.v == 0 ? c.n : c.v;
    return drop_members(star(GroundSet(c.n), c.r, centre), c.drop, c.seed);
  }();
  const auto census = saturation_census(fam, c.k, c.threads);
  std::size_t saturated = census.per_order.size() - census.unsaturated_count;
  Outcome o;
  o.result = Json{{"n", census.n},
                  {"r", census.r},
                  {"k", census.k},
                  {"family_size", fam.size()},
                  {"checked", census.checked},
                  {"orders", census.per_order.size()},
                  {"interval_total", census.interval_total},
                  {"expected_total", census.expected_total},
                  {"identity_check", census.identity_check},
                  {"saturated_orders", saturated},
                  {"unsaturated_count", census.unsaturated_count}};
  if (fam.n() <= 8 && !fam.empty()) {
    const auto comps = saturated_components(fam, c.k, c.threads);
    std::size_t mixed = 0;
    for (const auto& comp : comps.components) mixed += comp.mixed ? 1 : 0;
    const Rational delta = missing_fraction(fam);
    o.result["components"] = comps.components.size();
    o.result["largest_component"] = comps.largest_size;
    o.result["largest_point"] = comps.components.empty() ? 0 : comps.components.front().point;
    o.result["mixed_components"] = mixed;
    o.result["missing_fraction"] = delta.str();
    o.result["component_bound"] = large_component_bound(fam.n(), fam.r(), delta).str();
  }
  o.falsified = !census.identity_check;
  o.table = [census](std::ostream& out) { write_census_csv(census, out); };
  return o;
}

Outcome cmd_cayley_expansion(const ExperimentConfig& c) {
  require(c.m >= 2, "--m must be at least 2");
  Rational alpha;
  if (!c.alpha.empty()) {
    alpha = Rational::parse(c.alpha);
  } else {
    const std::int64_t base = c.alpha_n == 0 ? c.m + 1 : c.alpha_n;
    require(base >= 1 && base <= 1000000, "--alpha-n must be in [1, 10^6]");
    alpha = Rational(1, base * base * base);
  }
  ExpansionMode mode;
  if (c.mode == "exhaustive") mode = ExpansionMode::exhaustive;
  else if (c.mode == "heuristic") mode = ExpansionMode::heuristic;
  else throw InvalidParameter("--mode must be exhaustive or heuristic");
  require(c.restarts >= 1, "--restarts must be positive");

  const CayleyGraph g(c.m);
  const auto rep = verify_expansion(g, alpha, mode, HeuristicOptions{c.seed, c.iterations, c.restarts});
  Outcome o;
  o.result = Json{{"m", rep.m},
                  {"alpha", rep.alpha.str()},
                  {"mode", std::string(to_string(rep.mode))},
                  {"holds", rep.holds},
                  {"worst_set_size", rep.worst_set_size},
                  {"worst_ratio_num", rep.worst_ratio.num()},
                  {"worst_ratio_den", rep.worst_ratio.den()},
                  {"sets_examined", rep.sets_examined}};
  if (g.vertex_count() <= 5040) {
    const double gap = spectral_gap(g);
    o.result["spectral_gap"] = rounded(gap);
    o.result["implied_expansion"] = rounded(implied_vertex_expansion(gap, g.degree()));
  } else {
    o.result["spectral_gap"] = nullptr;
    o.result["implied_expansion"] = nullptr;
  }
  o.falsified = !rep.holds;
  return o;
}

Outcome cmd_matching_verify(const ExperimentConfig& c) {
  require_nrk(c);
  require(c.n <= 32, "--n must be at most 32");
  const auto v = verify_theorem2(c.n, c.r, c.k, c.threads);
  Outcome o;
  o.result = Json{{"n", v.n},
                  {"r", v.r},
                  {"k", v.k},
                  {"regime", std::string(to_string(frankl_regime(2 * c.n, c.r, c.k)))},
                  {"max_size", v.witness.size},
                  {"bound", v.bound},
                  {"bound_matches", v.bound_matches},
                  {"witness_count", v.witness.witness_count},
                  {"overflow", v.witness.overflow},
                  {"extremal_unique", optional_bool(v.extremal_unique)},
                  {"nodes", v.witness.nodes}};
  if (c.witnesses) {
    Json list = Json::array();
    for (const auto& f : v.witness.families) list.push_back(family_json(f));
    o.result["witnesses"] = list;
  }
  o.falsified = !v.bound_matches || v.extremal_unique == false;
  return o;
}

Outcome cmd_embed_check(const ExperimentConfig& c) {
  require(c.n >= 1 && c.n <= 7, "--n must be in [1, 7]");
  const MatchingGround matching(c.n);
  int lo = c.n, hi = 2 * c.n - 1;
  if (c.r != 0) {
    require(c.r >= c.n && c.r <= 2 * c.n - 1, "--r must be in [n, 2n-1]");
    lo = hi = c.r;
  }
  struct Row {
    int r;
    std::string set;
    std::string order;
    int end;
  };
  std::vector<Row> rows;
  Json per_r = Json::array();
  std::uint64_t total = 0, failures = 0;
  Json failed = Json::array();
  for (int r = lo; r <= hi; ++r) {
    const auto sets = hfamily_star(matching, r, 2 * c.n);
    std::uint64_t embedded = 0;
    for (const auto& s : sets) {
      ++total;
      try {
        const auto e = embed_as_interval(matching, s);
        ++embedded;
        rows.push_back({r, members_text(s), e.order.id(), e.end_position});
      } catch (const LemmaViolation&) {
        ++failures;
        failed.push_back(members_text(s));
      }
    }
    per_r.push_back({{"r", r}, {"sets", sets.size()}, {"embedded", embedded}});
  }
  Outcome o;
  o.result = Json{{"n", c.n}, {"per_r", per_r}, {"total_sets", total}, {"failures", failures}, {"failed", failed}};
  o.falsified = failures != 0;
  o.table = [rows](std::ostream& out) {
    out << "r,set,order_id,end_position\n";
    for (const auto& row : rows) out << row.r << ",\"" << row.set << "\"," << row.order << ',' << row.end << '\n';
  };
  return o;
}

Outcome lemma_check_circle(const ExperimentConfig& c) {
  std::vector<SetFamily> families;
  if (!c.family.empty()) {
    families.push_back(load_family(c.family));
  } else {
    require_nrk(c);
    require(c.r < c.n, "--r must be less than --n");
    const int centre = c.v == 0 ? c.n : c.v;
    families.push_back(star(GroundSet(c.n), c.r, centre));
    for (int j = 0; j < c.perturbations; ++j) {
      families.push_back(near_star_family(c.n, c.r, c.k, centre, c.seed + static_cast<std::uint64_t>(j)));
    }
  }
  const int n = families.front().n();
  require(n <= 8, "lemma-check over cyclic orders refuses n > 8");
  std::vector<ExclusionRule> rules;
  if (c.rule == "positional" || c.rule == "both") rules.push_back(ExclusionRule::positional);
  if (c.rule == "label" || c.rule == "both") rules.push_back(ExclusionRule::label);
  require(!rules.empty(), "--rule must be positional, label or both");

  Outcome o;
  Json per_rule = Json::array();
  std::uint64_t total_violations = 0;
  std::uint64_t saturated_orders = 0;
  std::vector<std::array<std::uint64_t, 4>> tallies(rules.size(), {0, 0, 0, 0});
  const std::uint64_t orders = factorial(n - 1);
  for (const auto& fam : families) {
    for (std::uint64_t rank = 0; rank < orders; ++rank) {
      const auto order = CyclicOrder::from_rank(n, rank);
      if (!saturation(fam, order, c.k).saturated()) continue;
      ++saturated_orders;
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        for (int i = 1; i <= n; ++i) {
          ++tallies[ri][static_cast<std::size_t>(check_lemma3_edge(fam, order, i, c.k, rules[ri]))];
        }
      }
    }
  }
  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    const auto& t = tallies[ri];
    per_rule.push_back({{"rule", rules[ri] == ExclusionRule::positional ? "positional" : "label"},
                        {"both_saturated_same_v", t[0]},
                        {"neighbor_unsaturated", t[1]},
                        {"not_applicable", t[2]},
                        {"violation", t[3]}});
    total_violations += t[3];
  }
  o.result = Json{{"scope", "circle"},
                  {"n", n},
                  {"r", families.front().r()},
                  {"k", c.k},
                  {"families", families.size()},
                  {"saturated_orders", saturated_orders},
                  {"per_rule", per_rule},
                  {"violations", total_violations}};
  o.falsified = total_violations != 0;
  return o;
}

Outcome lemma_check_matching(const ExperimentConfig& c) {
  std::vector<SetFamily> families;
  if (!c.family.empty()) {
    families.push_back(load_family(c.family));
    require(families.front().n() % 2 == 0, "matching family needs an even ground set");
  } else {
    require_nrk(c);
    require(c.n <= 7, "--n must be at most 7");
    const MatchingGround matching(c.n);
    const int centre = c.v == 0 ? 2 * c.n : c.v;
    const auto base = hfamily_star(matching, c.r, centre);
    const auto universe = build_hfamily(matching, c.r);
    families.push_back(base);
    for (int j = 0; j < c.perturbations; ++j) {
      families.push_back(perturb_family(base, universe.sets.sets(), c.k, c.seed + static_cast<std::uint64_t>(j)));
    }
  }
  Outcome o;
  std::uint64_t examined = 0, sat = 0, t_checks = 0, w_checks = 0;
  Json violations = Json::array();
  bool t_app = false, w_app = false;
  for (const auto& fam : families) {
    const auto rep = check_matching_lemmas(fam, c.k);
    t_app = rep.t_applicable;
    w_app = rep.w_applicable;
    examined += rep.orders_examined;
    sat += rep.saturated_at_2n;
    t_checks += rep.t_checks;
    w_checks += rep.w_checks;
    for (const auto& v : rep.violations) {
      violations.push_back({{"order", v.order_id},
                            {"operation", v.operation},
                            {"image", v.image_id},
                            {"image_count", v.image_count},
                            {"image_point", v.image_point}});
    }
  }
  const SetFamily first = families.front();
  o.result = Json{{"scope", "matching"},
                  {"n", first.n() / 2},
                  {"r", first.r()},
                  {"k", c.k},
                  {"families", families.size()},
                  {"t_applicable", t_app},
                  {"w_applicable", w_app},
                  {"orders_examined", examined},
                  {"saturated_at_2n", sat},
                  {"t_checks", t_checks},
                  {"w_checks", w_checks},
                  {"violation_count", violations.size()},
                  {"violations", violations}};
  o.falsified = !violations.empty();
  o.table = [first](std::ostream& out) { write_good_order_census_csv(first, MatchingGround(first.n() / 2), out); };
  return o;
}

Outcome cmd_lemma_check(const ExperimentConfig& c) {
  require(c.k >= 2, "--k must be at least 2");
  require(c.perturbations >= 0 && c.perturbations <= 1000, "--perturbations must be in [0, 1000]");
  if (c.scope == "circle") return lemma_check_circle(c);
  if (c.scope == "matching") return lemma_check_matching(c);
  throw InvalidParameter("--scope must be circle or matching");
}

Outcome dispatch(const ExperimentConfig& c) {
  if (c.command == "verify-frankl") return cmd_verify_frankl(c);
  if (c.command == "stability-audit") return cmd_stability_audit(c);
  if (c.command == "circle-census") return cmd_circle_census(c);
  if (c.command == "cayley-expansion") return cmd_cayley_expansion(c);
  if (c.command == "matching-verify") return cmd_matching_verify(c);
  if (c.command == "embed-check") return cmd_embed_check(c);
  if (c.command == "lemma-check") return cmd_lemma_check(c);
  throw InvalidParameter("unknown command '" + c.command + "'");
}

std::string csv_cell(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void write_summary_csv(const Json& result, std::ostream& out) {
  std::string header, row;
  for (const auto& [key, value] : result.items()) {
    if (value.is_array() || value.is_object()) continue;
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    row += csv_cell(value);
  }
  out << header << '\n' << row << '\n';
}

void emit(const ExperimentConfig& c, const Json& doc, const Outcome* outcome, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidParameter("cannot write report to '" + c.output + "'");
    sink = &file;
  }
  if (c.format == "csv") {
    if (outcome != nullptr && outcome->table) outcome->table(*sink);
    else if (outcome != nullptr) write_summary_csv(outcome->result, *sink);
  } else {
    *sink << doc.dump(2) << '\n';
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-frankl",   "stability-audit", "circle-census", "cayley-expansion",
                                              "matching-verify", "embed-check",     "lemma-check"};
  return names;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "command") c.command = value;
  else if (key == "n") c.n = parse_number<int>(key, value);
  else if (key == "r") c.r = parse_number<int>(key, value);
  else if (key == "k") c.k = parse_number<int>(key, value);
  else if (key == "m") c.m = parse_number<int>(key, value);
  else if (key == "v") c.v = parse_number<int>(key, value);
  else if (key == "epsilon") c.epsilon = value;
  else if (key == "alpha") c.alpha = value;
  else if (key == "alpha-n" || key == "alpha_n") c.alpha_n = parse_number<int>(key, value);
  else if (key == "mode") c.mode = value;
  else if (key == "rule") c.rule = value;
  else if (key == "scope") c.scope = value;
  else if (key == "family") c.family = value;
  else if (key == "drop") c.drop = parse_number<int>(key, value);
  else if (key == "perturbations") c.perturbations = parse_number<int>(key, value);
  else if (key == "iterations") c.iterations = parse_number<std::uint64_t>(key, value);
  else if (key == "restarts") c.restarts = parse_number<int>(key, value);
  else if (key == "witnesses") c.witnesses = parse_bool(key, value);
  else if (key == "timing") c.timing = parse_bool(key, value);
  else if (key == "output") c.output = value;
  else if (key == "format") {
    if (value != "json" && value != "csv") throw InvalidParameter("format must be json or csv");
    c.format = value;
  } else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "threads") {
    c.threads = parse_number<int>(key, value);
    if (c.threads < 1) throw InvalidParameter("threads must be positive");
  } else throw InvalidParameter("unknown setting '" + std::string(key) + "'");
}

void apply_config_text(ExperimentConfig& c, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("config line " + std::to_string(line_no) + " is not key=value");
    }
    std::string_view key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.remove_prefix(1);
    apply_setting(c, key, line.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(c, buf.str());
}

SetFamily perturb_family(const SetFamily& base, std::span<const ESet> pool, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ESet> members(base.begin(), base.end());
  std::shuffle(members.begin(), members.end(), rng);
  if (members.size() >= 2) {
    const std::size_t most = std::max<std::size_t>(1, members.size() / 4);
    members.resize(members.size() - 1 - static_cast<std::size_t>(rng() % most));
  }
  std::vector<ESet> extra;
  for (const auto& s : pool) {
    if (!base.contains(s)) extra.push_back(s);
  }
  std::shuffle(extra.begin(), extra.end(), rng);
  int added = 0;
  for (std::size_t i = 0; i < extra.size() && i < 24 && added < 2; ++i) {
    members.push_back(extra[i]);
    if (is_k_wise_intersecting(members, base.ground(), k)) ++added;
    else members.pop_back();
  }
  return SetFamily(base.ground(), base.r(), members);
}

SetFamily near_star_family(int n, int r, int k, int v, std::uint64_t seed) {
  const GroundSet ground(n);
  const auto pool = all_r_subsets(ground, r);
  return perturb_family(star(ground, r, v), pool, k, seed);
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  Json doc{{"schema", std::string(kSchemaVersion)}, {"command", c.command}, {"config", config_json(c)}};
  auto fail = [&](int code, std::string_view status, const std::string& reason) {
    err << "kwise-lab: " << reason << '\n';
    doc["status"] = status;
    doc["reason"] = reason;
    if (c.format == "json") {
      try {
        emit(c, doc, nullptr, out);
      } catch (const Error& e) {
        err << "kwise-lab: " << e.what() << '\n';
      }
    }
    return code;
  };
  try {
    if (c.format != "json" && c.format != "csv") throw InvalidParameter("format must be json or csv");
    if (c.threads < 1) throw InvalidParameter("threads must be positive");
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = dispatch(c);
    if (c.timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      outcome.result["runtime_ms"] = ms;
    }
    doc["status"] = outcome.falsified ? "falsified" : "ok";
    doc["result"] = outcome.result;
    emit(c, doc, &outcome, out);
    if (outcome.falsified) err << "kwise-lab: violation found, see report\n";
    return outcome.falsified ? exit_falsified : exit_ok;
  } catch (const LemmaViolation& e) {
    return fail(exit_falsified, "falsified", e.what());
  } catch (const ResourceGuard& e) {
    return fail(exit_refused, "refused", e.what());
  } catch (const NumericFailure& e) {
    return fail(exit_refused, "refused", e.what());
  } catch (const Error& e) {
    return fail(exit_invalid, "invalid", e.what());
  } catch (const std::exception& e) {
    return fail(exit_invalid, "invalid", e.what());
  }
}

}  // namespace kwise
