#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kwise/setfam.hpp"

namespace kwise {

// A cyclic order on [n], stored as its canonical representative: the
// sequence (s(1), ..., s(n)) rotated so that s(n) = n.
class CyclicOrder {
 public:
  // seq must already be canonical.
  explicit CyclicOrder(std::vector<int> seq);
  // Rotates an arbitrary permutation of [n] into canonical form.
  static CyclicOrder canonical(std::vector<int> seq);
  static CyclicOrder identity(int n);
  // The canonical order whose first n - 1 entries are the permutation of
  // [n - 1] with Lehmer rank `rank`.
  static CyclicOrder from_rank(int n, std::uint64_t rank);

  int n() const noexcept { return static_cast<int>(seq_.size()); }
  std::span<const int> seq() const noexcept { return seq_; }
  // Element at a 1-based position, taken mod n.
  int at(int position) const noexcept;
  int position_of(int value) const;
  // Lehmer rank of the first n - 1 entries; indexes the (n-1)! orders.
  std::uint64_t rank() const;

  friend bool operator==(const CyclicOrder&, const CyclicOrder&) = default;

 private:
  std::vector<int> seq_;
};

struct Interval {
  int start = 1;  // 1-based position
  int len = 0;
  ESet set;
  // 1-based position of the last element, mod n.
  int end(int n) const noexcept { return (start + len - 2) % n + 1; }
};

// Interval masks of a cyclic sequence: entry p - 1 is the set of the `len`
// elements at positions p, ..., p + len - 1 (mod size).
std::vector<ESet> cyclic_interval_masks(std::span<const int> seq, int len);

// The n intervals of length r, one per start position. Requires 1 <= r <= n-1.
std::vector<Interval> intervals_of(const CyclicOrder& order, int r);

// Members of the family that are intervals of the order.
SetFamily restrict_to_order(const SetFamily& family, const CyclicOrder& order);

// Bookkeeping of the index-assignment argument bounding interval families.
// Positions are rotated so that the distinguished complement ends at n; every
// other complement of length n - r owns the index where it ends, and the
// distinguished one owns all of [n, k(n - r)].
struct IndexAssignment {
  int n = 0;
  int r = 0;
  int k = 0;
  bool empty = true;  // no member of the family is an interval of the order
  // Position p of the order is relabelled ((p - rotation - 1) mod n) + 1.
  int rotation = 0;
  std::vector<ESet> members;      // restricted family, sorted
  std::vector<int> end_index;     // per member: rotated end of its complement
  std::size_t distinguished = 0;  // member whose complement ends at n
  std::vector<int> owner;         // owner[x - 1] for x in [1, k(n - r)]; -1 if free
  std::vector<int> unassigned;    // free indices, ascending

  int m() const noexcept { return static_cast<int>(members.size()); }
  int index_count() const noexcept { return k * (n - r); }
  // m - 1 + (k(n-r) - n + 1) + |unassigned| <= k(n-r), equivalently m <= r
  // once every residue class has a free index.
  bool counting_bound_holds() const noexcept;
  // True iff the free indices are n - r consecutive indices, hence one per
  // residue class mod n - r.
  bool unassigned_is_residue_transversal() const;
};

// Requires k*r <= (k-1)*n. Throws PreconditionViolation when some residue
// class mod n - r is fully assigned, i.e. k complements cover [n].
IndexAssignment assign_indices(const SetFamily& family, const CyclicOrder& order, int k);

struct IntervalFamilyMax {
  int size = 0;
  std::vector<SetFamily> witnesses;  // every maximum k-wise intersecting interval family
};

// Exhaustive search over subsets of the n intervals of length r. Requires
// k*r <= (k-1)*n and refuses n > 20.
IntervalFamilyMax max_interval_family(const CyclicOrder& order, int r, int k);

struct SaturationRecord {
  CyclicOrder order;
  std::size_t count = 0;     // |F_sigma|
  std::optional<int> point;  // v when the order is v-saturated

  bool saturated() const noexcept { return point.has_value(); }
};

// Saturated(v) iff exactly r members are intervals and all contain v; never
// throws on families that are not intersecting.
SaturationRecord classify_saturation(const SetFamily& family, const CyclicOrder& order);

// Checked version for a k-wise intersecting family with k*r < (k-1)*n.
// Throws PreconditionViolation if the restricted family is not k-wise
// intersecting and LemmaViolation if more than r members are intervals or r
// of them share no point.
SaturationRecord saturation(const SetFamily& family, const CyclicOrder& order, int k);

// Swaps positions i and i + 1 (position n + 1 is 1) and re-canonicalizes.
// For i <= n - 2 this is an involution on canonical orders; A_{n-1} and A_n
// are inverse to each other because re-anchoring shifts positions.
CyclicOrder apply_adjacent_transposition(const CyclicOrder& order, int i);

enum class Lemma3Outcome { both_saturated_same_v, neighbor_unsaturated, not_applicable, violation };
std::string_view to_string(Lemma3Outcome outcome);

// Which transpositions are excluded around the saturation point v:
// positional excludes A_i touching the position of v, label excludes
// i in {v, v - 1} read as raw indices.
enum class ExclusionRule { positional, label };

Lemma3Outcome check_lemma3_edge(const SetFamily& family, const CyclicOrder& order, int i, int k,
                                ExclusionRule rule = ExclusionRule::positional);

struct CensusReport {
  int n = 0;
  int r = 0;
  int k = 0;
  std::vector<SaturationRecord> per_order;  // in rank order
  std::uint64_t interval_total = 0;         // sum over orders of |F_sigma|
  std::uint64_t expected_total = 0;         // r!(n-r)!|F|
  bool identity_check = false;
  std::uint64_t unsaturated_count = 0;
  // True when the family is k-wise intersecting with k*r < (k-1)*n, so each
  // order was classified with the checked saturation().
  bool checked = false;
};

// Visits all (n-1)! cyclic orders. Refuses n > 9.
CensusReport saturation_census(const SetFamily& family, int k, int threads = 1);

// CSV with header order_index,count,status,v.
void write_census_csv(const CensusReport& report, std::ostream& out);

}  // namespace kwise
