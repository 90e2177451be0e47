#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "kwise/cayley.hpp"
#include "kwise/circle.hpp"
#include "kwise/cli.hpp"
#include "kwise/error.hpp"
#include "kwise/matching.hpp"
#include "kwise/search.hpp"
#include "kwise/setfam.hpp"

namespace py = pybind11;
using namespace kwise;

namespace {

using Sets = std::vector<std::vector<int>>;

Sets to_lists(const SetFamily& f) {
  Sets out;
  for (const auto& s : f) out.push_back(s.elements());
  return out;
}

std::vector<ESet> to_masks(const Sets& sets) {
  std::vector<ESet> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(ESet::from_elements(s));
  return out;
}

SetFamily make_family(int n, int r, const Sets& sets) { return SetFamily(GroundSet(n), r, to_masks(sets)); }

py::dict witness_dict(const ExtremalWitness& w) {
  py::list families, centers;
  for (std::size_t i = 0; i < w.families.size(); ++i) {
    families.append(to_lists(w.families[i]));
    centers.append(w.classes[i].is_star ? py::object(py::int_(w.classes[i].center)) : py::object(py::none()));
  }
  py::dict d;
  d["size"] = w.size;
  d["witness_count"] = w.witness_count;
  d["overflow"] = w.overflow;
  d["nodes"] = w.nodes;
  d["families"] = families;
  d["star_centers"] = centers;
  return d;
}

py::object opt_bool(const std::optional<bool>& b) {
  return b ? py::object(py::bool_(*b)) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_kwise, m) {
  m.doc() = "k-wise intersecting families: exact search, cyclic-order and matching tools";

  py::register_exception<Error>(m, "KwiseError", PyExc_RuntimeError);
  auto base = m.attr("KwiseError");
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base);
  py::register_exception<ResourceGuard>(m, "ResourceGuard", base);
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base);
  py::register_exception<LemmaViolation>(m, "LemmaViolation", base);
  py::register_exception<NumericFailure>(m, "NumericFailure", base);

  m.attr("SCHEMA") = std::string(kSchemaVersion);

  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def("frankl_bound", &frankl_bound, py::arg("n"), py::arg("r"));
  m.def("regime", [](int n, int r, int k) { return std::string(to_string(frankl_regime(n, r, k))); }, py::arg("n"),
        py::arg("r"), py::arg("k"));
  m.def(
      "is_k_wise_intersecting",
      [](int n, int r, const Sets& sets, int k) { return is_k_wise_intersecting(make_family(n, r, sets), k); },
      py::arg("n"), py::arg("r"), py::arg("sets"), py::arg("k"));
  m.def(
      "star", [](int n, int r, int v) { return to_lists(star(GroundSet(n), r, v)); }, py::arg("n"), py::arg("r"),
      py::arg("v"));

  m.def(
      "max_family_search",
      [](int n, int r, const Sets& universe, int k, std::size_t witness_cap, int threads) {
        SearchProblem p{GroundSet(n), r, to_masks(universe), k, witness_cap};
        return witness_dict(max_family_search(p, threads));
      },
      py::arg("n"), py::arg("r"), py::arg("universe"), py::arg("k"), py::arg("witness_cap") = kDefaultWitnessCap,
      py::arg("threads") = 1);

  m.def(
      "verify_frankl",
      [](int n, int r, int k, int threads) {
        const auto v = verify_frankl(n, r, k, threads);
        py::dict d;
        d["regime"] = std::string(to_string(v.regime));
        d["bound"] = frankl_bound(n, r);
        d["bound_matches"] = v.bound_matches;
        d["all_extremal_are_stars"] = opt_bool(v.all_extremal_are_stars);
        d["witness"] = witness_dict(v.witness);
        return d;
      },
      py::arg("n"), py::arg("r"), py::arg("k"), py::arg("threads") = 1);

  m.def(
      "stability_audit",
      [](int n, int r, int k, const std::string& epsilon, int threads) {
        const auto s = stability_audit(n, r, k, Rational::parse(epsilon), threads);
        py::list violations;
        for (const auto& f : s.violations) violations.append(to_lists(f));
        py::dict d;
        d["delta"] = s.delta.str();
        d["threshold"] = s.threshold.str();
        d["star_threshold"] = s.star_threshold.str();
        d["min_size"] = s.min_size;
        d["families_examined"] = s.families_examined;
        d["maximal_families"] = s.maximal_families;
        d["violations"] = violations;
        return d;
      },
      py::arg("n"), py::arg("r"), py::arg("k"), py::arg("epsilon") = "1/2", py::arg("threads") = 1);

  m.def(
      "saturation_census",
      [](int n, int r, const Sets& sets, int k, int threads) {
        const auto c = saturation_census(make_family(n, r, sets), k, threads);
        py::list counts, points;
        for (const auto& rec : c.per_order) {
          counts.append(rec.count);
          points.append(rec.point ? py::object(py::int_(*rec.point)) : py::object(py::none()));
        }
        py::dict d;
        d["interval_total"] = c.interval_total;
        d["expected_total"] = c.expected_total;
        d["identity_check"] = c.identity_check;
        d["unsaturated_count"] = c.unsaturated_count;
        d["checked"] = c.checked;
        d["counts"] = counts;
        d["points"] = points;
        return d;
      },
      py::arg("n"), py::arg("r"), py::arg("sets"), py::arg("k"), py::arg("threads") = 1);

  m.def(
      "canonical_order", [](std::vector<int> seq) {
        const auto o = CyclicOrder::canonical(std::move(seq));
        return std::vector<int>(o.seq().begin(), o.seq().end());
      },
      py::arg("seq"));
  m.def(
      "order_intervals",
      [](const std::vector<int>& seq, int r) {
        Sets out;
        for (const auto& iv : intervals_of(CyclicOrder::canonical(seq), r)) out.push_back(iv.set.elements());
        return out;
      },
      py::arg("seq"), py::arg("r"));
  m.def(
      "max_interval_family",
      [](const std::vector<int>& seq, int r, int k) {
        const auto res = max_interval_family(CyclicOrder::canonical(seq), r, k);
        py::list witnesses;
        for (const auto& w : res.witnesses) witnesses.append(to_lists(w));
        return py::make_tuple(res.size, witnesses);
      },
      py::arg("seq"), py::arg("r"), py::arg("k"));
  m.def(
      "apply_adjacent_transposition",
      [](const std::vector<int>& seq, int i) {
        const auto out = apply_adjacent_transposition(CyclicOrder::canonical(seq), i);
        return std::vector<int>(out.seq().begin(), out.seq().end());
      },
      py::arg("seq"), py::arg("i"));

  m.def(
      "cayley_expansion",
      [](int mm, const std::string& alpha, const std::string& mode, std::uint64_t seed) {
        const CayleyGraph g(mm);
        HeuristicOptions opts;
        opts.seed = seed;
        const auto rep = verify_expansion(g, Rational::parse(alpha),
                                          mode == "heuristic" ? ExpansionMode::heuristic : ExpansionMode::exhaustive, opts);
        py::dict d;
        d["holds"] = rep.holds;
        d["worst_ratio"] = rep.worst_ratio.str();
        d["worst_set_size"] = rep.worst_set_size;
        d["sets_examined"] = rep.sets_examined;
        return d;
      },
      py::arg("m"), py::arg("alpha"), py::arg("mode") = "exhaustive", py::arg("seed") = 0);
  m.def(
      "spectral_gap", [](int mm) { return spectral_gap(CayleyGraph(mm)); }, py::arg("m"));

  m.def("good_order_count", &good_order_count, py::arg("n"));
  m.def(
      "interval_count_per_set", [](int n, int r) { return interval_count_per_set(MatchingGround(n), r); },
      py::arg("n"), py::arg("r"));
  m.def("theorem2_bound", &theorem2_bound, py::arg("n"), py::arg("r"));
  m.def(
      "hfamily", [](int n, int r) { return to_lists(build_hfamily(MatchingGround(n), r).sets); }, py::arg("n"),
      py::arg("r"));
  m.def(
      "hfamily_star", [](int n, int r, int x) { return to_lists(hfamily_star(MatchingGround(n), r, x)); },
      py::arg("n"), py::arg("r"), py::arg("x"));
  m.def(
      "good_orders",
      [](int n) {
        Sets out;
        for (const auto& o : enumerate_good_orders(MatchingGround(n))) out.emplace_back(o.seq().begin(), o.seq().end());
        return out;
      },
      py::arg("n"));
  m.def(
      "embed_as_interval",
      [](int n, const std::vector<int>& set) {
        const auto e = embed_as_interval(MatchingGround(n), ESet::from_elements(set));
        return py::make_tuple(std::vector<int>(e.order.seq().begin(), e.order.seq().end()), e.end_position);
      },
      py::arg("n"), py::arg("set"));
  m.def(
      "verify_matching_bound",
      [](int n, int r, int k, int threads) {
        const auto v = verify_theorem2(n, r, k, threads);
        py::dict d;
        d["bound"] = v.bound;
        d["bound_matches"] = v.bound_matches;
        d["extremal_unique"] = opt_bool(v.extremal_unique);
        d["witness"] = witness_dict(v.witness);
        return d;
      },
      py::arg("n"), py::arg("r"), py::arg("k"), py::arg("threads") = 1);
  m.def(
      "check_matching_lemmas",
      [](int n, int r, const Sets& sets, int k) {
        const auto rep = check_matching_lemmas(make_family(2 * n, r, sets), k);
        py::list violations;
        for (const auto& v : rep.violations) violations.append(py::make_tuple(v.order_id, v.operation, v.image_id));
        py::dict d;
        d["t_applicable"] = rep.t_applicable;
        d["w_applicable"] = rep.w_applicable;
        d["orders_examined"] = rep.orders_examined;
        d["saturated_at_2n"] = rep.saturated_at_2n;
        d["t_checks"] = rep.t_checks;
        d["w_checks"] = rep.w_checks;
        d["violations"] = violations;
        return d;
      },
      py::arg("n"), py::arg("r"), py::arg("sets"), py::arg("k"));

  m.def(
      "run",
      [](const std::string& command, const std::map<std::string, std::string>& settings) {
        ExperimentConfig cfg;
        cfg.command = command;
        for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
        std::ostringstream out, err;
        int status = 0;
        {
          py::gil_scoped_release release;
          status = run(cfg, out, err);
        }
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("command"), py::arg("settings") = std::map<std::string, std::string>{});
}
