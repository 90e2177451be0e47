#include "kwise/circle.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "kwise/error.hpp"
#include "kwise/parallel.hpp"
#include "kwise/permutation.hpp"

namespace kwise {

namespace {

void require_interval_length(int n, int r) {
  if (r < 1 || r > n - 1) {
    throw InvalidParameter("interval length must be in [1, n-1], got r=" + std::to_string(r) +
                           " with n=" + std::to_string(n));
  }
}

void require_same_ground(const SetFamily& family, const CyclicOrder& order) {
  if (family.n() != order.n()) throw InvalidParameter("family and cyclic order have different ground sets");
}

bool covers_with(std::span<const std::uint64_t> complements, std::size_t start, int remaining, std::uint64_t cover,
                 std::uint64_t full) {
  if (cover == full) return true;
  if (remaining == 0) return false;
  for (std::size_t i = start; i < complements.size(); ++i) {
    const std::uint64_t next = cover | complements[i];
    if (next != cover && covers_with(complements, i + 1, remaining - 1, next, full)) return true;
  }
  return false;
}

std::vector<ESet> interval_members(const SetFamily& family, std::span<const ESet> masks) {
  std::vector<ESet> members;
  for (const ESet& s : masks) {
    if (family.contains(s)) members.push_back(s);
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

CyclicOrder::CyclicOrder(std::vector<int> seq) : seq_(std::move(seq)) {
  if (seq_.empty() || !is_permutation_of_1_to_m(seq_)) throw InvalidParameter("cyclic order must permute [n]");
  if (seq_.back() != n()) throw InvalidParameter("cyclic order is not canonical: value n must sit at position n");
}

CyclicOrder CyclicOrder::canonical(std::vector<int> seq) {
  if (seq.empty() || !is_permutation_of_1_to_m(seq)) throw InvalidParameter("cyclic order must permute [n]");
  const auto anchor = std::find(seq.begin(), seq.end(), static_cast<int>(seq.size()));
  std::rotate(seq.begin(), anchor + 1, seq.end());
  return CyclicOrder(std::move(seq));
}

CyclicOrder CyclicOrder::identity(int n) {
  if (n < 1) throw InvalidParameter("cyclic order needs n >= 1");
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  return CyclicOrder(std::move(seq));
}

CyclicOrder CyclicOrder::from_rank(int n, std::uint64_t rank) {
  if (n < 1) throw InvalidParameter("cyclic order needs n >= 1");
  std::vector<int> seq = lehmer_unrank(n - 1, rank);
  seq.push_back(n);
  return CyclicOrder(std::move(seq));
}

int CyclicOrder::at(int position) const noexcept {
  const int size = n();
  const int p = ((position - 1) % size + size) % size;
  return seq_[static_cast<std::size_t>(p)];
}

int CyclicOrder::position_of(int value) const {
  const auto it = std::find(seq_.begin(), seq_.end(), value);
  if (it == seq_.end()) throw InvalidParameter("value not in cyclic order");
  return static_cast<int>(it - seq_.begin()) + 1;
}

std::uint64_t CyclicOrder::rank() const { return lehmer_rank(std::span<const int>(seq_).first(seq_.size() - 1)); }

std::vector<ESet> cyclic_interval_masks(std::span<const int> seq, int len) {
  const int size = static_cast<int>(seq.size());
  std::vector<ESet> masks(static_cast<std::size_t>(size));
  if (len <= 0 || size == 0) return masks;
  std::uint64_t window = 0;
  for (int p = 0; p < len; ++p) window |= std::uint64_t{1} << (seq[static_cast<std::size_t>(p % size)] - 1);
  for (int start = 0; start < size; ++start) {
    masks[static_cast<std::size_t>(start)] = ESet(window);
    window &= ~(std::uint64_t{1} << (seq[static_cast<std::size_t>(start)] - 1));
    window |= std::uint64_t{1} << (seq[static_cast<std::size_t>((start + len) % size)] - 1);
  }
  return masks;
}

std::vector<Interval> intervals_of(const CyclicOrder& order, int r) {
  require_interval_length(order.n(), r);
  const auto masks = cyclic_interval_masks(order.seq(), r);
  std::vector<Interval> out;
  out.reserve(masks.size());
  for (std::size_t s = 0; s < masks.size(); ++s) out.push_back({static_cast<int>(s) + 1, r, masks[s]});
  return out;
}

SetFamily restrict_to_order(const SetFamily& family, const CyclicOrder& order) {
  require_same_ground(family, order);
  require_interval_length(order.n(), family.r());
  const auto masks = cyclic_interval_masks(order.seq(), family.r());
  return SetFamily(family.ground(), family.r(), interval_members(family, masks));
}

bool IndexAssignment::counting_bound_holds() const noexcept {
  if (empty) return true;
  const int own_distinguished = index_count() - n + 1;
  return (m() - 1) + own_distinguished + static_cast<int>(unassigned.size()) <= index_count() && m() <= r;
}

bool IndexAssignment::unassigned_is_residue_transversal() const {
  if (static_cast<int>(unassigned.size()) != n - r) return false;
  for (std::size_t i = 1; i < unassigned.size(); ++i) {
    if (unassigned[i] != unassigned[i - 1] + 1) return false;
  }
  return true;
}

IndexAssignment assign_indices(const SetFamily& family, const CyclicOrder& order, int k) {
  require_same_ground(family, order);
  if (k < 2) throw InvalidParameter("k must be at least 2");
  const int n = order.n();
  const int r = family.r();
  if (static_cast<long long>(k) * r > static_cast<long long>(k - 1) * n) {
    throw InvalidParameter("index assignment requires k*r <= (k-1)*n");
  }
  IndexAssignment out;
  out.n = n;
  out.r = r;
  out.k = k;

  const auto masks = cyclic_interval_masks(order.seq(), r);
  // The complement of the interval starting at s ends at s - 1.
  std::vector<std::pair<ESet, int>> found;
  for (int s = 1; s <= n; ++s) {
    const ESet set = masks[static_cast<std::size_t>(s - 1)];
    if (family.contains(set)) found.emplace_back(set, s == 1 ? n : s - 1);
  }
  if (found.empty()) return out;
  std::sort(found.begin(), found.end());
  out.empty = false;

  int smallest_end = n;
  for (const auto& [set, end] : found) smallest_end = std::min(smallest_end, end);
  out.rotation = smallest_end;

  const int count = out.index_count();
  out.owner.assign(static_cast<std::size_t>(count), -1);
  for (std::size_t id = 0; id < found.size(); ++id) {
    const int rotated = ((found[id].second - smallest_end - 1) % n + n) % n + 1;
    out.members.push_back(found[id].first);
    out.end_index.push_back(rotated);
    if (rotated == n) {
      out.distinguished = id;
      for (int x = n; x <= count; ++x) out.owner[static_cast<std::size_t>(x - 1)] = static_cast<int>(id);
    } else {
      out.owner[static_cast<std::size_t>(rotated - 1)] = static_cast<int>(id);
    }
  }

  const int period = n - r;
  for (int cls = 1; cls <= period; ++cls) {
    bool all_assigned = true;
    for (int x = cls; x <= count; x += period) all_assigned = all_assigned && out.owner[static_cast<std::size_t>(x - 1)] >= 0;
    if (all_assigned) {
      throw PreconditionViolation("residue class " + std::to_string(cls) + " mod " + std::to_string(period) +
                                  " is fully assigned: k complements cover [n], family is not k-wise intersecting");
    }
  }
  for (int x = 1; x <= count; ++x) {
    if (out.owner[static_cast<std::size_t>(x - 1)] < 0) out.unassigned.push_back(x);
  }
  return out;
}

IntervalFamilyMax max_interval_family(const CyclicOrder& order, int r, int k) {
  const int n = order.n();
  if (n > 20) throw ResourceGuard("max_interval_family refuses n > 20 (2^n interval subsets)");
  require_interval_length(n, r);
  if (k < 2) throw InvalidParameter("k must be at least 2");
  if (static_cast<long long>(k) * r > static_cast<long long>(k - 1) * n) {
    throw InvalidParameter("interval family bound requires k*r <= (k-1)*n");
  }
  const GroundSet ground(n);
  const std::uint64_t full = ground.full_mask();
  const auto masks = cyclic_interval_masks(order.seq(), r);

  IntervalFamilyMax best;
  std::vector<std::uint64_t> chosen_complements;
  std::vector<ESet> chosen;

  // Every subset visited is k-wise intersecting; subsets of such families
  // are too, so the depth-first walk reaches all of them.
  auto visit = [&](auto&& self, std::size_t next) -> void {
    const int size = static_cast<int>(chosen.size());
    if (size > best.size) {
      best.size = size;
      best.witnesses.clear();
    }
    if (size == best.size) best.witnesses.emplace_back(ground, r, chosen);
    for (std::size_t j = next; j < masks.size(); ++j) {
      const std::uint64_t comp = full & ~masks[j].bits();
      if (covers_with(chosen_complements, 0, k - 1, comp, full)) continue;
      chosen.push_back(masks[j]);
      chosen_complements.push_back(comp);
      self(self, j + 1);
      chosen.pop_back();
      chosen_complements.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

SaturationRecord classify_saturation(const SetFamily& family, const CyclicOrder& order) {
  require_same_ground(family, order);
  require_interval_length(order.n(), family.r());
  const auto masks = cyclic_interval_masks(order.seq(), family.r());
  const auto members = interval_members(family, masks);
  SaturationRecord rec{order, members.size(), std::nullopt};
  if (static_cast<int>(members.size()) == family.r()) {
    if (const int v = common_element(members); v != 0) rec.point = v;
  }
  return rec;
}

SaturationRecord saturation(const SetFamily& family, const CyclicOrder& order, int k) {
  require_same_ground(family, order);
  if (frankl_regime(order.n(), family.r(), k) != Regime::strict_interior) {
    throw InvalidParameter("saturation requires k*r < (k-1)*n");
  }
  const auto masks = cyclic_interval_masks(order.seq(), family.r());
  const auto members = interval_members(family, masks);
  if (!is_k_wise_intersecting(members, family.ground(), k)) {
    throw PreconditionViolation("intervals of the family in this order are not k-wise intersecting");
  }
  if (static_cast<int>(members.size()) > family.r()) {
    throw LemmaViolation("more than r k-wise intersecting intervals in one cyclic order");
  }
  SaturationRecord rec{order, members.size(), std::nullopt};
  if (static_cast<int>(members.size()) == family.r()) {
    const int v = common_element(members);
    if (v == 0) throw LemmaViolation("r k-wise intersecting intervals without a common point");
    rec.point = v;
  }
  return rec;
}

CyclicOrder apply_adjacent_transposition(const CyclicOrder& order, int i) {
  const int n = order.n();
  if (i < 1 || i > n) throw InvalidParameter("transposition index must be in [1, n]");
  std::vector<int> seq(order.seq().begin(), order.seq().end());
  std::swap(seq[static_cast<std::size_t>(i - 1)], seq[static_cast<std::size_t>(i % n)]);
  return CyclicOrder::canonical(std::move(seq));
}

std::string_view to_string(Lemma3Outcome outcome) {
  switch (outcome) {
    case Lemma3Outcome::both_saturated_same_v: return "both_saturated_same_v";
    case Lemma3Outcome::neighbor_unsaturated: return "neighbor_unsaturated";
    case Lemma3Outcome::not_applicable: return "not_applicable";
    case Lemma3Outcome::violation: return "violation";
  }
  return "unknown";
}

Lemma3Outcome check_lemma3_edge(const SetFamily& family, const CyclicOrder& order, int i, int k, ExclusionRule rule) {
  const int n = order.n();
  if (i < 1 || i > n) throw InvalidParameter("transposition index must be in [1, n]");
  const SaturationRecord here = saturation(family, order, k);
  if (!here.saturated()) return Lemma3Outcome::not_applicable;
  const int v = *here.point;
  const int anchor = rule == ExclusionRule::positional ? order.position_of(v) : v;
  const int before = anchor == 1 ? n : anchor - 1;
  if (i == anchor || i == before) return Lemma3Outcome::not_applicable;

  const CyclicOrder moved = apply_adjacent_transposition(order, i);
  const auto members = interval_members(family, cyclic_interval_masks(moved.seq(), family.r()));
  if (!is_k_wise_intersecting(members, family.ground(), k)) {
    throw PreconditionViolation("intervals of the family in the transposed order are not k-wise intersecting");
  }
  if (static_cast<int>(members.size()) > family.r()) return Lemma3Outcome::violation;
  if (static_cast<int>(members.size()) < family.r()) return Lemma3Outcome::neighbor_unsaturated;
  const int w = common_element(members);
  return w == v ? Lemma3Outcome::both_saturated_same_v : Lemma3Outcome::violation;
}

CensusReport saturation_census(const SetFamily& family, int k, int threads) {
  const int n = family.n();
  if (n > 9) throw ResourceGuard("saturation census refuses n > 9 ((n-1)! orders)");
  require_interval_length(n, family.r());
  if (k < 2) throw InvalidParameter("k must be at least 2");
  const int r = family.r();

  CensusReport report;
  report.n = n;
  report.r = r;
  report.k = k;
  report.checked =
      frankl_regime(n, r, k) == Regime::strict_interior && is_k_wise_intersecting(family, k);

  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  const std::size_t orders = static_cast<std::size_t>(factorial(n - 1));
  std::vector<CyclicOrder> all;
  all.reserve(orders);
  do {
    std::vector<int> seq = perm;
    seq.push_back(n);
    all.emplace_back(std::move(seq));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::size_t> counts(orders, 0);
  std::vector<int> points(orders, 0);
  parallel_for_slices(orders, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const SaturationRecord rec = report.checked ? saturation(family, all[idx], k) : classify_saturation(family, all[idx]);
      counts[idx] = rec.count;
      points[idx] = rec.point.value_or(0);
    }
  });

  report.per_order.reserve(orders);
  for (std::size_t idx = 0; idx < orders; ++idx) {
    report.interval_total += counts[idx];
    std::optional<int> point;
    if (points[idx] != 0) point = points[idx];
    else ++report.unsaturated_count;
    report.per_order.push_back({std::move(all[idx]), counts[idx], point});
  }
  report.expected_total = factorial(r) * factorial(n - r) * family.size();
  report.identity_check = report.interval_total == report.expected_total;
  return report;
}

void write_census_csv(const CensusReport& report, std::ostream& out) {
  out << "order_index,count,status,v\n";
  for (std::size_t idx = 0; idx < report.per_order.size(); ++idx) {
    const auto& rec = report.per_order[idx];
    out << idx << ',' << rec.count << ',' << (rec.saturated() ? "saturated" : "unsaturated") << ',';
    if (rec.saturated()) out << *rec.point;
    out << '\n';
  }
}

}  // namespace kwise
