#include "kwise/matching.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "kwise/circle.hpp"
#include "kwise/error.hpp"
#include "kwise/permutation.hpp"

namespace kwise {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InvalidParameter("integer overflow in closed-form count");
  return out;
}

std::uint64_t pow2(int e) {
  if (e < 0 || e > 63) throw InvalidParameter("power of two out of range");
  return std::uint64_t{1} << e;
}

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

}  // namespace

MatchingGround::MatchingGround(int n) : n_(n) {
  if (n < 1 || n > kMaxGround / 2) throw InvalidParameter("matching size n must be in [1, 32]");
}

bool MatchingGround::is_independent(ESet set) const noexcept {
  const std::uint64_t low = set.bits() & ((std::uint64_t{1} << n_) - 1);
  const std::uint64_t high = set.bits() >> n_;
  return (low & high) == 0;
}

bool MatchingGround::contains_transversal(ESet set) const noexcept {
  const std::uint64_t edges = (std::uint64_t{1} << n_) - 1;
  const std::uint64_t low = set.bits() & edges;
  const std::uint64_t high = (set.bits() >> n_) & edges;
  return (low | high) == edges;
}

std::string_view to_string(HKind kind) {
  switch (kind) {
    case HKind::independent: return "independent";
    case HKind::max_ind_containing: return "max_ind_containing";
    case HKind::united: return "union";
  }
  return "unknown";
}

HFamily build_hfamily(const MatchingGround& matching, int r, HKind kind) {
  const int n = matching.n();
  if (r < 1 || r > 2 * n) throw InvalidParameter("H-family size r must be in [1, 2n]");
  const GroundSet edges(n);
  std::vector<ESet> members;

  const bool want_independent = kind != HKind::max_ind_containing && r <= n;
  const bool want_containing = kind != HKind::independent && r >= n;
  if (want_independent) {
    // r edges, one endpoint each.
    for (const ESet& chosen : all_r_subsets(edges, r)) {
      const auto e = chosen.elements();
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << r); ++pick) {
        std::uint64_t bits = 0;
        for (int j = 0; j < r; ++j) bits |= bit(((pick >> j) & 1u) ? e[static_cast<std::size_t>(j)] + n : e[static_cast<std::size_t>(j)]);
        members.emplace_back(bits);
      }
    }
  }
  if (want_containing && !(want_independent && r == n)) {
    // Both endpoints of r - n edges, one endpoint of each other edge.
    const int singles = 2 * n - r;
    for (const ESet& doubled : all_r_subsets(edges, r - n)) {
      std::vector<int> rest;
      for (int e = 1; e <= n; ++e) {
        if (!doubled.contains(e)) rest.push_back(e);
      }
      std::uint64_t base = 0;
      for (int e : doubled.elements()) base |= bit(e) | bit(e + n);
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << singles); ++pick) {
        std::uint64_t bits = base;
        for (int j = 0; j < singles; ++j) bits |= bit(((pick >> j) & 1u) ? rest[static_cast<std::size_t>(j)] + n : rest[static_cast<std::size_t>(j)]);
        members.emplace_back(bits);
      }
    }
  }
  return HFamily{matching, r, kind, SetFamily(matching.ground(), r, std::move(members))};
}

std::uint64_t theorem2_bound(int n, int r) {
  if (n < 1 || n > kMaxGround / 2) throw InvalidParameter("n out of range");
  if (r < 1 || r > 2 * n) throw InvalidParameter("theorem2_bound requires 1 <= r <= 2n");
  if (r <= n) return checked_mul(pow2(r - 1), binomial(n - 1, r - 1));
  std::uint64_t total = checked_mul(pow2(2 * n - r), binomial(n - 1, r - n - 1));
  if (2 * n - r - 1 >= 0) total += checked_mul(pow2(2 * n - r - 1), binomial(n - 1, r - n));
  return total;
}

SetFamily hfamily_star(const MatchingGround& matching, int r, int x) {
  if (!matching.contains(x)) throw InvalidParameter("vertex outside V(M_n)");
  const HFamily all = build_hfamily(matching, r);
  SetFamily through = star_restriction(all.sets, x);
  if (r > matching.n() && through.size() != theorem2_bound(matching.n(), r)) {
    throw LemmaViolation("|H^r_x(M_n)| disagrees with its closed form");
  }
  return through;
}

bool is_good_sequence(const MatchingGround& matching, std::span<const int> seq) {
  const int n = matching.n();
  if (static_cast<int>(seq.size()) != 2 * n || !is_permutation_of_1_to_m(seq)) return false;
  for (int p = 0; p < n; ++p) {
    if (seq[static_cast<std::size_t>(p + n)] != matching.partner(seq[static_cast<std::size_t>(p)])) return false;
  }
  return true;
}

GoodCyclicOrder::GoodCyclicOrder(const MatchingGround& matching, std::vector<int> seq)
    : matching_(matching), seq_(std::move(seq)) {
  if (!is_good_sequence(matching_, seq_)) throw InvalidParameter("ordering is not good: partners must be n apart");
  if (seq_.back() != 2 * matching_.n()) throw InvalidParameter("good ordering is not canonical: 2n must be last");
}

GoodCyclicOrder GoodCyclicOrder::canonical(const MatchingGround& matching, std::vector<int> seq) {
  if (!is_good_sequence(matching, seq)) throw InvalidParameter("ordering is not good: partners must be n apart");
  const auto anchor = std::find(seq.begin(), seq.end(), 2 * matching.n());
  std::rotate(seq.begin(), anchor + 1, seq.end());
  return GoodCyclicOrder(matching, std::move(seq));
}

GoodCyclicOrder GoodCyclicOrder::identity(const MatchingGround& matching) {
  std::vector<int> seq(static_cast<std::size_t>(2 * matching.n()));
  std::iota(seq.begin(), seq.end(), 1);
  return GoodCyclicOrder(matching, std::move(seq));
}

int GoodCyclicOrder::at(int position) const noexcept {
  const int size = static_cast<int>(seq_.size());
  return seq_[static_cast<std::size_t>(((position - 1) % size + size) % size)];
}

bool GoodCyclicOrder::in_c() const noexcept {
  const int n = matching_.n();
  return std::all_of(seq_.begin(), seq_.begin() + n, [n](int v) { return v <= n; });
}

std::string GoodCyclicOrder::id() const {
  std::string out;
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    if (i != 0) out += '-';
    out += std::to_string(seq_[i]);
  }
  return out;
}

std::uint64_t good_order_count(int n) {
  if (n < 1 || n > 20) throw InvalidParameter("n out of range");
  return checked_mul(pow2(n - 1), factorial(n - 1));
}

void for_each_good_order(const MatchingGround& matching, const std::function<void(const GoodCyclicOrder&)>& visit) {
  const int n = matching.n();
  if (n > 7) throw ResourceGuard("good-order enumeration refuses n > 7");
  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> seq(static_cast<std::size_t>(2 * n));
  seq[static_cast<std::size_t>(n - 1)] = n;
  seq[static_cast<std::size_t>(2 * n - 1)] = 2 * n;
  do {
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << (n - 1)); ++flips) {
      for (int p = 0; p < n - 1; ++p) {
        const int v = ((flips >> p) & 1u) ? perm[static_cast<std::size_t>(p)] + n : perm[static_cast<std::size_t>(p)];
        seq[static_cast<std::size_t>(p)] = v;
        seq[static_cast<std::size_t>(p + n)] = matching.partner(v);
      }
      visit(GoodCyclicOrder(matching, seq));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<GoodCyclicOrder> enumerate_good_orders(const MatchingGround& matching) {
  std::vector<GoodCyclicOrder> out;
  for_each_good_order(matching, [&](const GoodCyclicOrder& o) { out.push_back(o); });
  if (out.size() != good_order_count(matching.n())) {
    throw LemmaViolation("good-order enumeration count disagrees with 2^{n-1}(n-1)!");
  }
  return out;
}

std::uint64_t interval_count_per_set(const MatchingGround& matching, int r) {
  const int n = matching.n();
  if (r < 1 || r > 2 * n - 1) throw InvalidParameter("interval count requires 1 <= r <= 2n-1");
  if (r <= n) return checked_mul(checked_mul(factorial(r), factorial(n - r)), pow2(n - r));
  return checked_mul(checked_mul(factorial(2 * n - r), factorial(r - n)), pow2(r - n));
}

std::vector<ESet> good_order_intervals(const SetFamily& family, const GoodCyclicOrder& order) {
  if (family.n() != 2 * order.n()) throw InvalidParameter("family is not over V(M_n)");
  if (family.r() > 2 * order.n() - 1) throw InvalidParameter("interval length must be at most 2n-1");
  std::vector<ESet> members;
  for (const ESet& s : cyclic_interval_masks(order.seq(), family.r())) {
    if (family.contains(s)) members.push_back(s);
  }
  std::sort(members.begin(), members.end());
  return members;
}

GoodCyclicOrder apply_T(const GoodCyclicOrder& order, int i) {
  const int n = order.n();
  if (i < 1 || i > n - 2) throw InvalidParameter("T_i requires 1 <= i <= n-2");
  std::vector<int> seq(order.seq().begin(), order.seq().end());
  std::swap(seq[static_cast<std::size_t>(i - 1)], seq[static_cast<std::size_t>(i)]);
  std::swap(seq[static_cast<std::size_t>(i + n - 1)], seq[static_cast<std::size_t>(i + n)]);
  return GoodCyclicOrder(order.matching(), std::move(seq));
}

GoodCyclicOrder apply_W(const GoodCyclicOrder& order, int i) {
  const int n = order.n();
  if (i < 1 || i > n - 1) throw InvalidParameter("W_i requires 1 <= i <= n-1");
  std::vector<int> seq(order.seq().begin(), order.seq().end());
  std::swap(seq[static_cast<std::size_t>(i - 1)], seq[static_cast<std::size_t>(i + n - 1)]);
  return GoodCyclicOrder(order.matching(), std::move(seq));
}

MatchingSaturation classify_matching_saturation(const SetFamily& family, const GoodCyclicOrder& order) {
  const auto members = good_order_intervals(family, order);
  MatchingSaturation out{members.size(), std::nullopt};
  if (static_cast<int>(members.size()) == family.r()) {
    if (const int v = common_element(members); v != 0) out.point = v;
  }
  return out;
}

namespace {

void require_h_member(const MatchingGround& matching, ESet set) {
  const int r = set.size();
  const bool ok = r <= matching.n() ? matching.is_independent(set) : matching.contains_transversal(set);
  if (!ok) throw InvalidParameter("set " + to_string(set) + " is not in H^r(M_n)");
}

}  // namespace

MatchingLemmaReport check_matching_lemmas(const SetFamily& family, int k) {
  if (family.n() % 2 != 0) throw InvalidParameter("family ground size must be 2n");
  const MatchingGround matching(family.n() / 2);
  const int n = matching.n();
  const int r = family.r();
  if (r > 2 * n - 1) throw InvalidParameter("interval length must be at most 2n-1");
  for (const ESet& s : family) require_h_member(matching, s);

  MatchingLemmaReport report;
  report.n = n;
  report.r = r;
  report.k = k;
  const Regime regime = frankl_regime(2 * n, r, k);
  report.t_applicable = regime == Regime::strict_interior;
  report.w_applicable = report.t_applicable && n < r && n >= 2;
  if (regime == Regime::outside) return report;
  if (!is_k_wise_intersecting(family, k)) throw PreconditionViolation("family is not k-wise intersecting");

  const int anchor = 2 * n;
  auto examine = [&](const GoodCyclicOrder& from, const GoodCyclicOrder& image, const std::string& op,
                     std::uint64_t& checks) {
    const MatchingSaturation sat = classify_matching_saturation(family, image);
    if (static_cast<int>(sat.count) < r) return;
    ++checks;
    if (static_cast<int>(sat.count) == r && sat.point == anchor) return;
    report.violations.push_back({from.id(), op, image.id(), sat.count, sat.point.value_or(0)});
  };

  for_each_good_order(matching, [&](const GoodCyclicOrder& order) {
    ++report.orders_examined;
    const MatchingSaturation sat = classify_matching_saturation(family, order);
    // Interval-family analogues of the r bound and, in the interior, the
    // common point.
    const bool pointless = static_cast<int>(sat.count) == r && !sat.point;
    if (static_cast<int>(sat.count) > r || (pointless && report.t_applicable)) {
      report.violations.push_back({order.id(), "base", order.id(), sat.count, 0});
      return;
    }
    if (sat.point != anchor) return;
    ++report.saturated_at_2n;
    if (!report.t_applicable) return;
    for (int i = 1; i <= n - 2; ++i) examine(order, apply_T(order, i), "T" + std::to_string(i), report.t_checks);
    if (report.w_applicable) {
      examine(order, apply_W(order, n - 1), "W" + std::to_string(n - 1), report.w_checks);
    }
  });
  return report;
}

Embedding embed_as_interval(const MatchingGround& matching, ESet set) {
  const int n = matching.n();
  const int r = set.size();
  const int top = 2 * n;
  if (!set.fits(matching.ground())) throw InvalidParameter("set is not a subset of V(M_n)");
  if (!set.contains(top)) throw InvalidParameter("embedded set must contain vertex 2n");
  if (r < n || r > 2 * n - 1) throw InvalidParameter("embedding requires n <= r <= 2n-1");
  require_h_member(matching, set);

  // Full edges among 1..n-1 (named by their low vertex) and lone vertices.
  std::vector<int> doubled;
  std::vector<int> lone;
  for (int e = 1; e <= n - 1; ++e) {
    const bool lo = set.contains(e);
    const bool hi = set.contains(e + n);
    if (lo && hi) doubled.push_back(e);
    else if (lo) lone.push_back(e);
    else if (hi) lone.push_back(e + n);
  }

  std::vector<int> first_half;  // positions 1..n-1
  int end = 0;
  if (r == n) {
    // Lone vertices below n in place, the others through their partners.
    std::vector<int> low;
    std::vector<int> high;
    for (int v : lone) (v < n ? low : high).push_back(v);
    first_half = low;
    for (int w : high) first_half.push_back(w - n);
    end = low.empty() ? top : static_cast<int>(low.size());
  } else if (set.contains(n)) {
    first_half = doubled;
    first_half.insert(first_half.end(), lone.begin(), lone.end());
    end = r - 1;
  } else {
    first_half = lone;
    first_half.insert(first_half.end(), doubled.begin(), doubled.end());
    end = n - 1;
  }

  std::vector<int> seq(static_cast<std::size_t>(2 * n));
  for (int p = 1; p <= n - 1; ++p) {
    const int v = first_half.at(static_cast<std::size_t>(p - 1));
    seq[static_cast<std::size_t>(p - 1)] = v;
    seq[static_cast<std::size_t>(p + n - 1)] = matching.partner(v);
  }
  seq[static_cast<std::size_t>(n - 1)] = n;
  seq[static_cast<std::size_t>(2 * n - 1)] = top;
  Embedding out{GoodCyclicOrder(matching, std::move(seq)), end};

  const int start = ((end - r) % top + top) % top;  // 0-based start position
  if (cyclic_interval_masks(out.order.seq(), r)[static_cast<std::size_t>(start)] != set) {
    throw LemmaViolation("embedding construction did not place the set as an interval");
  }
  if (r == n && !out.order.in_c()) throw LemmaViolation("r = n embedding left C_{n-1}");
  return out;
}

Theorem2Verification verify_theorem2(int n, int r, int k, int threads) {
  const MatchingGround matching(n);
  if (r < 1 || r > 2 * n) throw InvalidParameter("verify_theorem2 requires 1 <= r <= 2n");
  const Regime regime = frankl_regime(2 * n, r, k);
  if (regime == Regime::outside) throw InvalidParameter("verify_theorem2 requires k*r <= (k-1)*2n");
  const HFamily universe = build_hfamily(matching, r);
  if (universe.sets.size() > kMaxUniverse) {
    throw ResourceGuard("|H^r(M_n)| exceeds the search universe limit of 200; shrink n or r");
  }
  Theorem2Verification out;
  out.n = n;
  out.r = r;
  out.k = k;
  out.bound = theorem2_bound(n, r);
  out.witness = max_family_search(
      {matching.ground(), r, std::vector<ESet>(universe.sets.begin(), universe.sets.end()), k, kDefaultWitnessCap},
      threads);
  out.bound_matches = out.witness.size == out.bound;
  if (regime == Regime::strict_interior) {
    std::vector<SetFamily> stars;
    for (int x = 1; x <= 2 * n; ++x) stars.push_back(star_restriction(universe.sets, x));
    auto less = [](const SetFamily& a, const SetFamily& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    std::sort(stars.begin(), stars.end(), less);
    stars.erase(std::unique(stars.begin(), stars.end()), stars.end());
    out.extremal_unique = !out.witness.overflow && out.witness.families == stars;
  }
  return out;
}

void write_good_order_census_csv(const SetFamily& family, const MatchingGround& matching, std::ostream& out) {
  out << "order_id,count,status,v\n";
  for_each_good_order(matching, [&](const GoodCyclicOrder& order) {
    const MatchingSaturation sat = classify_matching_saturation(family, order);
    out << order.id() << ',' << sat.count << ',' << (sat.point ? "saturated" : "unsaturated") << ',';
    if (sat.point) out << *sat.point;
    out << '\n';
  });
}

}  // namespace kwise
