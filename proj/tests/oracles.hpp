#pragma once

// Brute-force reference computations for the tests. Everything here works
// from definitions on plain element vectors and shares no code paths with
// the library beyond ESet/SetFamily storage.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "kwise/setfam.hpp"

namespace oracle {

using Members = std::vector<std::vector<int>>;

inline Members members_of(const kwise::SetFamily& fam) {
  Members out;
  for (const auto& s : fam) out.push_back(s.elements());
  return out;
}

inline bool intersect_nonempty(const Members& fam, const std::vector<std::size_t>& pick) {
  std::vector<int> meet = fam[pick[0]];
  for (std::size_t j = 1; j < pick.size(); ++j) {
    std::vector<int> next;
    std::set_intersection(meet.begin(), meet.end(), fam[pick[j]].begin(), fam[pick[j]].end(), std::back_inserter(next));
    meet.swap(next);
  }
  return !meet.empty();
}

// Every k-tuple with repetition shares an element.
inline bool k_wise_by_tuples(const Members& fam, int k) {
  if (fam.empty()) return true;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  while (true) {
    if (!intersect_nonempty(fam, pick)) return false;
    int pos = k - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] + 1 == fam.size()) --pos;
    if (pos < 0) return true;
    ++pick[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) pick[static_cast<std::size_t>(q)] = 0;
  }
}

// Every set of at most k distinct members shares an element.
inline bool k_wise_by_subsets(const Members& fam, int k) {
  const std::size_t m = fam.size();
  std::vector<std::size_t> pick;
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!ok) return;
    if (!pick.empty() && !intersect_nonempty(fam, pick)) {
      ok = false;
      return;
    }
    if (static_cast<int>(pick.size()) == k) return;
    for (std::size_t i = from; i < m; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return ok;
}

inline std::vector<std::vector<int>> r_subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

struct BruteMax {
  std::size_t size = 0;
  std::vector<Members> witnesses;  // each sorted
};

// Largest k-wise intersecting subfamily by trying all 2^|universe| subsets.
inline BruteMax max_family_exhaustive(const Members& universe, int k) {
  BruteMax best;
  const std::size_t u = universe.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u); ++mask) {
    Members fam;
    for (std::size_t i = 0; i < u; ++i) {
      if ((mask >> i) & 1u) fam.push_back(universe[i]);
    }
    if (fam.size() < best.size) continue;
    if (!k_wise_by_subsets(fam, k)) continue;
    std::sort(fam.begin(), fam.end());
    if (fam.size() > best.size) {
      best.size = fam.size();
      best.witnesses.clear();
    }
    best.witnesses.push_back(fam);
  }
  std::sort(best.witnesses.begin(), best.witnesses.end());
  return best;
}

// Cyclic windows of a sequence as sorted element vectors.
inline std::vector<std::vector<int>> cyclic_windows(const std::vector<int>& seq, int len) {
  std::vector<std::vector<int>> out;
  const std::size_t n = seq.size();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> w;
    for (int j = 0; j < len; ++j) w.push_back(seq[(s + static_cast<std::size_t>(j)) % n]);
    std::sort(w.begin(), w.end());
    out.push_back(w);
  }
  return out;
}

inline bool is_window(const std::vector<int>& seq, const std::vector<int>& set) {
  const auto windows = cyclic_windows(seq, static_cast<int>(set.size()));
  return std::find(windows.begin(), windows.end(), set) != windows.end();
}

// Number of cyclic orders of [n] (all n! linear arrangements divided by the
// n rotations) in which `set` is an interval.
inline std::uint64_t cyclic_orders_with_interval(int n, const std::vector<int>& set) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::uint64_t hits = 0;
  do {
    if (is_window(perm, set)) ++hits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return hits / static_cast<std::uint64_t>(n);
}

// All good arrangements of V(M_n) as linear sequences (every rotation kept).
inline std::vector<std::vector<int>> good_arrangements(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<std::size_t>(2 * n));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool good = true;
    for (int p = 0; p < 2 * n && good; ++p) {
      const int v = perm[static_cast<std::size_t>(p)];
      const int partner = v <= n ? v + n : v - n;
      good = perm[static_cast<std::size_t>((p + n) % (2 * n))] == partner;
    }
    if (good) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// H^r(M_n) from the definitions: independent r-sets plus r-sets containing a
// transversal.
inline std::vector<std::vector<int>> h_family(int n, int r) {
  std::vector<std::vector<int>> out;
  for (const auto& s : r_subsets(2 * n, r)) {
    bool independent = true;
    bool meets_all = true;
    for (int e = 1; e <= n; ++e) {
      const bool lo = std::find(s.begin(), s.end(), e) != s.end();
      const bool hi = std::find(s.begin(), s.end(), e + n) != s.end();
      if (lo && hi) independent = false;
      if (!lo && !hi) meets_all = false;
    }
    if (independent || meets_all) out.push_back(s);
  }
  return out;
}

inline kwise::SetFamily to_family(int n, int r, const Members& members) {
  std::vector<kwise::ESet> sets;
  for (const auto& m : members) sets.push_back(kwise::ESet::from_elements(m));
  return kwise::SetFamily(kwise::GroundSet(n), r, std::move(sets));
}

}  // namespace oracle
