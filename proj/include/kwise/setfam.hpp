#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kwise {

inline constexpr int kMaxGround = 64;

// The ground set [n] = {1, ..., n}, 1 <= n <= 64.
class GroundSet {
 public:
  explicit GroundSet(int n);

  int n() const noexcept { return n_; }
  bool contains(int v) const noexcept { return v >= 1 && v <= n_; }
  // Bit mask with the n ground elements set.
  std::uint64_t full_mask() const noexcept { return n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int n_;
};

// A subset of a ground set as a single 64-bit word. Element v lives at bit
// v - 1, so the numeric value of the word orders sets canonically.
class ESet {
 public:
  constexpr ESet() = default;
  constexpr explicit ESet(std::uint64_t bits) : bits_(bits) {}
  ESet(std::initializer_list<int> elements);
  static ESet from_elements(std::span<const int> elements);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  int size() const noexcept;
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(int v) const noexcept { return v >= 1 && v <= 64 && ((bits_ >> (v - 1)) & 1u) != 0; }
  // Smallest element, or 0 when empty.
  int smallest() const noexcept;
  std::vector<int> elements() const;
  bool fits(const GroundSet& ground) const noexcept { return (bits_ & ~ground.full_mask()) == 0; }
  ESet complement(const GroundSet& ground) const noexcept { return ESet(ground.full_mask() & ~bits_); }
  ESet with(int v) const noexcept { return ESet(bits_ | (std::uint64_t{1} << (v - 1))); }
  ESet without(int v) const noexcept { return ESet(bits_ & ~(std::uint64_t{1} << (v - 1))); }

  friend constexpr ESet operator&(ESet a, ESet b) noexcept { return ESet(a.bits_ & b.bits_); }
  friend constexpr ESet operator|(ESet a, ESet b) noexcept { return ESet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(ESet, ESet) noexcept = default;
  friend constexpr auto operator<=>(ESet a, ESet b) noexcept { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

std::string to_string(ESet set);

// An r-uniform family of distinct subsets of a ground set, with members kept
// sorted by numeric bit value.
class SetFamily {
 public:
  SetFamily(GroundSet ground, int r, std::vector<ESet> sets = {});

  const GroundSet& ground() const noexcept { return ground_; }
  int n() const noexcept { return ground_.n(); }
  int r() const noexcept { return r_; }
  std::span<const ESet> sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  bool contains(ESet set) const noexcept;
  auto begin() const noexcept { return sets_.begin(); }
  auto end() const noexcept { return sets_.end(); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  GroundSet ground_;
  int r_;
  std::vector<ESet> sets_;
};

// Exact binomial coefficient from a Pascal table; 0 when k < 0 or k > n.
// Defined for 0 <= n <= 64.
std::uint64_t binomial(int n, int k);

// All r-subsets of the ground set, in increasing numeric order.
std::vector<ESet> all_r_subsets(const GroundSet& ground, int r);

// True iff every choice of k members (repetition allowed) shares an element.
// Checked through the dual: no k distinct complements cover the ground set.
bool is_k_wise_intersecting(const SetFamily& family, int k);
bool is_k_wise_intersecting(std::span<const ESet> sets, const GroundSet& ground, int k);

// All r-subsets of [n] containing v.
SetFamily star(const GroundSet& ground, int r, int v);

// Members of the family that contain v.
SetFamily star_restriction(const SetFamily& family, int v);

struct StarMax {
  int center = 0;        // smallest element attaining the maximum
  std::size_t size = 0;  // max over v of |F(v)|
};
StarMax max_star(const SetFamily& family);

// Common element of all members (smallest one), or 0 if there is none or the
// family is empty.
int common_element(std::span<const ESet> sets);

// binomial(n - 1, r - 1).
std::uint64_t frankl_bound(int n, int r);

enum class Regime { strict_interior, boundary, outside };
std::string_view to_string(Regime regime);

// Compares r with (k - 1)n/k exactly: k*r against (k - 1)*n.
Regime frankl_regime(int n, int r, int k);

// Text form: header "n=<n> r=<r>", then one comma-separated member per line.
std::string format_family(const SetFamily& family);
SetFamily parse_family(std::string_view text);
SetFamily read_family(std::istream& in);

}  // namespace kwise
