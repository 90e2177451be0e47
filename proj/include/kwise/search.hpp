#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kwise/rational.hpp"
#include "kwise/setfam.hpp"

namespace kwise {

inline constexpr std::size_t kMaxUniverse = 200;
inline constexpr std::size_t kDefaultWitnessCap = 1000;

struct SearchProblem {
  GroundSet ground;
  int r = 1;
  std::vector<ESet> universe;  // distinct r-sets over the ground
  int k = 2;
  std::size_t witness_cap = kDefaultWitnessCap;
};

struct StarClass {
  bool is_star = false;
  int center = 0;  // smallest common element when is_star
};

StarClass classify_star(const SetFamily& family);

struct ExtremalWitness {
  std::size_t size = 0;
  std::vector<SetFamily> families;  // maximum families, at most witness_cap
  std::vector<StarClass> classes;   // parallel to families
  std::uint64_t witness_count = 0;  // all maximum families found, including those past the cap
  bool overflow = false;
  std::uint64_t nodes = 0;
};

// Exact maximum k-wise intersecting subfamily of the universe by
// branch-and-bound, with all maximum families up to the cap. Refuses
// universes larger than 200.
ExtremalWitness max_family_search(const SearchProblem& problem, int threads = 1);

// The universe ordering used by the search: members containing element 1
// first, then lexicographic by element list.
std::vector<ESet> search_order(std::vector<ESet> universe);

struct FranklVerification {
  int n = 0;
  int r = 0;
  int k = 0;
  Regime regime = Regime::outside;
  std::uint64_t bound = 0;
  bool bound_matches = false;
  // Reported only in the strict interior; at the boundary non-star extremal
  // families may exist.
  std::optional<bool> all_extremal_are_stars;
  ExtremalWitness witness;
};

// Searches all r-subsets of [n]. Requires k*r <= (k-1)*n.
FranklVerification verify_frankl(int n, int r, int k, int threads = 1);

struct StabilityReport {
  int n = 0;
  int r = 0;
  int k = 0;
  Rational epsilon;
  Rational delta;           // epsilon / (r n^4)
  Rational threshold;       // (1 - delta) binomial(n-1, r-1)
  Rational star_threshold;  // (1 - epsilon/n) binomial(n-1, r-1)
  std::size_t min_size = 0; // ceil(threshold)
  std::uint64_t families_examined = 0;  // k-wise intersecting families with |F| >= threshold
  std::uint64_t maximal_families = 0;   // of which maximal in the universe
  std::vector<SetFamily> violations;    // families whose largest star is below star_threshold
};

// Enumerates every k-wise intersecting family of r-subsets of [n] with size
// at least the threshold and checks it has a large star. Requires the strict
// interior, 0 <= epsilon < 1 and n <= 7.
StabilityReport stability_audit(int n, int r, int k, const Rational& epsilon, int threads = 1);

}  // namespace kwise
