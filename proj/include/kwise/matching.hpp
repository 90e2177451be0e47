#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kwise/search.hpp"
#include "kwise/setfam.hpp"

namespace kwise {

// The perfect matching M_n on vertices 1..2n with edges {i, i + n}.
class MatchingGround {
 public:
  explicit MatchingGround(int n);  // 1 <= n <= 32

  int n() const noexcept { return n_; }
  int vertex_count() const noexcept { return 2 * n_; }
  GroundSet ground() const { return GroundSet(2 * n_); }
  int partner(int v) const noexcept { return v <= n_ ? v + n_ : v - n_; }
  bool contains(int v) const noexcept { return v >= 1 && v <= 2 * n_; }
  // Edge index 1..n of a vertex.
  int edge_of(int v) const noexcept { return v <= n_ ? v : v - n_; }

  bool is_independent(ESet set) const noexcept;
  // Meets every edge, i.e. contains a transversal (maximum independent set).
  bool contains_transversal(ESet set) const noexcept;

 private:
  int n_;
};

enum class HKind { independent, max_ind_containing, united };
std::string_view to_string(HKind kind);

// I^r (independent r-sets), M^r (r-sets containing a maximum independent
// set) or their union H^r, for the matching M_n.
struct HFamily {
  MatchingGround matching;
  int r;
  HKind kind;
  SetFamily sets;
};

// Built from the decomposition: r <= n picks r edges and an endpoint of
// each; r >= n takes both endpoints of r - n edges and one endpoint of every
// other edge. Requires 1 <= r <= 2n.
HFamily build_hfamily(const MatchingGround& matching, int r, HKind kind = HKind::united);

// Members of H^r through x. For r > n the size is checked against
// 2^{2n-r} binomial(n-1, r-n-1) + 2^{2n-r-1} binomial(n-1, r-n).
SetFamily hfamily_star(const MatchingGround& matching, int r, int x);

// 2^{r-1} binomial(n-1, r-1) for r <= n, otherwise
// 2^{2n-r} binomial(n-1, r-n-1) + 2^{2n-r-1} binomial(n-1, r-n).
std::uint64_t theorem2_bound(int n, int r);

// A cyclic ordering of V(M_n) with every vertex n positions from its
// partner, stored canonically with vertex 2n at position 2n (which places n
// at position n).
class GoodCyclicOrder {
 public:
  GoodCyclicOrder(const MatchingGround& matching, std::vector<int> seq);
  // Rotates a good ordering into canonical form.
  static GoodCyclicOrder canonical(const MatchingGround& matching, std::vector<int> seq);
  static GoodCyclicOrder identity(const MatchingGround& matching);

  const MatchingGround& matching() const noexcept { return matching_; }
  int n() const noexcept { return matching_.n(); }
  std::span<const int> seq() const noexcept { return seq_; }
  int at(int position) const noexcept;
  // First half uses only vertices 1..n, the class C_{n-1}.
  bool in_c() const noexcept;
  // Hyphen-joined sequence, e.g. "1-2-3-4".
  std::string id() const;

  friend bool operator==(const GoodCyclicOrder& a, const GoodCyclicOrder& b) noexcept { return a.seq_ == b.seq_; }

 private:
  MatchingGround matching_;
  std::vector<int> seq_;
};

bool is_good_sequence(const MatchingGround& matching, std::span<const int> seq);

// Every canonical good ordering exactly once (2^{n-1}(n-1)! of them).
// Refuses n > 7.
std::vector<GoodCyclicOrder> enumerate_good_orders(const MatchingGround& matching);
void for_each_good_order(const MatchingGround& matching, const std::function<void(const GoodCyclicOrder&)>& visit);
std::uint64_t good_order_count(int n);

// Number of good orderings in which a fixed member of H^r is an interval:
// r!(n-r)!2^{n-r} for r <= n, (2n-r)!(r-n)!2^{r-n} otherwise.
std::uint64_t interval_count_per_set(const MatchingGround& matching, int r);

// Members of the family that are length-r intervals of the ordering.
std::vector<ESet> good_order_intervals(const SetFamily& family, const GoodCyclicOrder& order);

// Swaps positions (i, i+1) and (i+n, i+n+1); 1 <= i <= n-2.
GoodCyclicOrder apply_T(const GoodCyclicOrder& order, int i);
// Swaps positions i and n+i; 1 <= i <= n-1.
GoodCyclicOrder apply_W(const GoodCyclicOrder& order, int i);

struct MatchingSaturation {
  std::size_t count = 0;
  std::optional<int> point;
};
MatchingSaturation classify_matching_saturation(const SetFamily& family, const GoodCyclicOrder& order);

struct LemmaViolationRecord {
  std::string order_id;
  std::string operation;  // "T<i>" or "W<i>"
  std::string image_id;
  std::size_t image_count = 0;
  int image_point = 0;  // 0 when the image has r intervals but no common point
};

struct MatchingLemmaReport {
  int n = 0;
  int r = 0;
  int k = 0;
  bool t_applicable = false;  // k*r < (k-1)*2n
  bool w_applicable = false;  // additionally n < r
  std::uint64_t orders_examined = 0;
  std::uint64_t saturated_at_2n = 0;
  std::uint64_t t_checks = 0;  // images that were saturated
  std::uint64_t w_checks = 0;
  std::vector<LemmaViolationRecord> violations;
};

// For every 2n-saturated good ordering and every applicable T_i (and W_{n-1}
// when n < r), a saturated image must again be 2n-saturated. The family
// must be a k-wise intersecting subfamily of H^r(M_n). On the boundary
// k*r = (k-1)*2n only the bound of r intervals per ordering is checked;
// outside the regime nothing is examined.
MatchingLemmaReport check_matching_lemmas(const SetFamily& family, int k);

struct Embedding {
  GoodCyclicOrder order;
  int end_position = 0;  // the length-r interval ending here equals the input set
};

// Places a member of H^r_{2n}(M_n), n <= r <= 2n-1, as an interval of a good
// ordering (in C_{n-1} when r = n). The result is verified before returning.
Embedding embed_as_interval(const MatchingGround& matching, ESet set);

struct Theorem2Verification {
  int n = 0;
  int r = 0;
  int k = 0;
  std::uint64_t bound = 0;
  bool bound_matches = false;
  // Reported only when k*r < (k-1)*2n.
  std::optional<bool> extremal_unique;
  ExtremalWitness witness;
};

// Searches H^r(M_n). Requires k*r <= (k-1)*2n.
Theorem2Verification verify_theorem2(int n, int r, int k, int threads = 1);

// CSV with header order_id,count,status,v over all good orderings.
void write_good_order_census_csv(const SetFamily& family, const MatchingGround& matching, std::ostream& out);

}  // namespace kwise
