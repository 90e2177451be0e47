#include <random>
#include <sstream>

#include "doctest.h"
#include "kwise/circle.hpp"
#include "kwise/error.hpp"
#include "kwise/permutation.hpp"
#include "oracles.hpp"

using namespace kwise;

namespace {

SetFamily fam_of(int n, int r, std::initializer_list<std::initializer_list<int>> sets) {
  std::vector<ESet> out;
  for (auto s : sets) out.emplace_back(s);
  return SetFamily(GroundSet(n), r, out);
}

std::vector<ESet> sets_of(const std::vector<Interval>& intervals) {
  std::vector<ESet> out;
  for (const auto& iv : intervals) out.push_back(iv.set);
  return out;
}

SetFamily without(const SetFamily& fam, ESet drop) {
  std::vector<ESet> keep;
  for (const auto& s : fam) {
    if (s != drop) keep.push_back(s);
  }
  return SetFamily(fam.ground(), fam.r(), keep);
}

SetFamily random_family(std::mt19937_64& rng, int n, int r) {
  auto all = all_r_subsets(GroundSet(n), r);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::uniform_int_distribution<std::size_t>(0, all.size())(rng));
  return SetFamily(GroundSet(n), r, all);
}

}  // namespace

TEST_SUITE("circle") {
  TEST_CASE("cyclic order representation") {
    const auto id = CyclicOrder::identity(5);
    CHECK(id.rank() == 0);
    CHECK(id.at(6) == 1);
    CHECK(id.position_of(3) == 3);
    CHECK(CyclicOrder::canonical({3, 4, 1, 2}) == CyclicOrder(std::vector<int>{1, 2, 3, 4}));
    CHECK_THROWS_AS(CyclicOrder(std::vector<int>{4, 1, 2, 3}), InvalidParameter);
    CHECK_THROWS_AS(CyclicOrder::canonical({1, 1, 2}), InvalidParameter);
    for (std::uint64_t rank = 0; rank < 24; ++rank) CHECK(CyclicOrder::from_rank(5, rank).rank() == rank);
  }

  TEST_CASE("interval examples") {
    const auto iv = intervals_of(CyclicOrder::identity(4), 2);
    CHECK(sets_of(iv) == std::vector<ESet>{ESet{1, 2}, ESet{2, 3}, ESet{3, 4}, ESet{4, 1}});
    CHECK(iv[3].end(4) == 1);
    const auto order = CyclicOrder::from_rank(6, 77);
    const auto singles = sets_of(intervals_of(order, 1));
    CHECK(singles.size() == 6);
    for (int v = 1; v <= 6; ++v) CHECK(std::count(singles.begin(), singles.end(), ESet{v}) == 1);
    CHECK(sets_of(intervals_of(CyclicOrder::identity(5), 3)) ==
          std::vector<ESet>{ESet{1, 2, 3}, ESet{2, 3, 4}, ESet{3, 4, 5}, ESet{4, 5, 1}, ESet{5, 1, 2}});
    CHECK_THROWS_AS(intervals_of(order, 6), InvalidParameter);
  }

  TEST_CASE("restriction examples") {
    const auto id4 = CyclicOrder::identity(4);
    CHECK(restrict_to_order(SetFamily(GroundSet(4), 2, all_r_subsets(GroundSet(4), 2)), id4) ==
          fam_of(4, 2, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}));
    CHECK(restrict_to_order(fam_of(4, 2, {{1, 3}}), id4).empty());
    CHECK(restrict_to_order(star(GroundSet(5), 2, 1), CyclicOrder::identity(5)) == fam_of(5, 2, {{1, 2}, {1, 5}}));
  }

  TEST_CASE("restriction matches the window oracle on every order") {
    std::mt19937_64 rng(2);
    for (int n = 3; n <= 6; ++n) {
      for (int r = 1; r < n; ++r) {
        const auto fam = random_family(rng, n, r);
        for (std::uint64_t rank = 0; rank < factorial(n - 1); ++rank) {
          const auto order = CyclicOrder::from_rank(n, rank);
          const std::vector<int> seq(order.seq().begin(), order.seq().end());
          const auto restricted = restrict_to_order(fam, order);
          CHECK(restricted.size() <= static_cast<std::size_t>(n));
          for (const auto& s : fam) CHECK(restricted.contains(s) == oracle::is_window(seq, s.elements()));
        }
      }
    }
  }

  TEST_CASE("index assignment on a full point star of intervals") {
    const auto order = CyclicOrder::identity(6);
    const auto fam = fam_of(6, 4, {{3, 4, 5, 6}, {4, 5, 6, 1}, {5, 6, 1, 2}, {6, 1, 2, 3}});
    const auto a = assign_indices(fam, order, 3);
    CHECK_FALSE(a.empty);
    CHECK(a.m() == 4);
    CHECK(a.index_count() == 6);
    CHECK(a.rotation == 2);
    CHECK(a.unassigned == std::vector<int>{4, 5});
    CHECK(a.unassigned_is_residue_transversal());
    CHECK(a.counting_bound_holds());
    CHECK(a.members[a.distinguished] == ESet{3, 4, 5, 6});
    CHECK(a.owner[5] == static_cast<int>(a.distinguished));
  }

  TEST_CASE("index assignment with one interval") {
    const auto order = CyclicOrder::from_rank(7, 100);
    const auto iv = intervals_of(order, 4);
    const auto a = assign_indices(SetFamily(GroundSet(7), 4, {iv[2].set}), order, 3);
    CHECK(a.m() == 1);
    CHECK(a.index_count() == 9);
    for (int x = 7; x <= 9; ++x) CHECK(a.owner[static_cast<std::size_t>(x - 1)] == 0);
    CHECK(a.unassigned == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(a.counting_bound_holds());
    std::vector<bool> hit(3, false);
    for (int x : a.unassigned) hit[static_cast<std::size_t>(x % 3)] = true;
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }

  TEST_CASE("index assignment refuses covering complements") {
    const auto fam = fam_of(6, 4, {{3, 4, 5, 6}, {5, 6, 1, 2}, {1, 2, 3, 4}});
    CHECK_FALSE(is_k_wise_intersecting(fam, 3));
    CHECK_THROWS_AS(assign_indices(fam, CyclicOrder::identity(6), 3), PreconditionViolation);
    CHECK(assign_indices(SetFamily(GroundSet(6), 4), CyclicOrder::identity(6), 3).empty);
  }

  TEST_CASE("index assignment bookkeeping over random intersecting interval families") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const int n = std::uniform_int_distribution<int>(4, 9)(rng);
      const int k = std::uniform_int_distribution<int>(2, 4)(rng);
      const int rmax = (k - 1) * n / k;
      if (rmax < 1) continue;
      const int r = std::uniform_int_distribution<int>(1, std::min(rmax, n - 1))(rng);
      const auto order = CyclicOrder::from_rank(n, std::uniform_int_distribution<std::uint64_t>(0, factorial(n - 1) - 1)(rng));
      auto iv = sets_of(intervals_of(order, r));
      std::shuffle(iv.begin(), iv.end(), rng);
      std::vector<ESet> chosen;
      for (const auto& s : iv) {
        chosen.push_back(s);
        if (!is_k_wise_intersecting(chosen, GroundSet(n), k)) chosen.pop_back();
      }
      const SetFamily fam(GroundSet(n), r, chosen);
      const auto a = assign_indices(fam, order, k);
      CHECK(a.counting_bound_holds());
      CHECK(a.m() <= r);
      if (a.m() == r && k * r < (k - 1) * n) CHECK(a.unassigned_is_residue_transversal());
      ++checked;
    }
    CHECK(checked > 300);
  }

  TEST_CASE("max interval family examples") {
    CHECK(max_interval_family(CyclicOrder::identity(6), 4, 3).size == 4);
    CHECK(max_interval_family(CyclicOrder::identity(4), 2, 2).size == 2);
    CHECK(max_interval_family(CyclicOrder::identity(6), 3, 2).size == 3);
    CHECK_THROWS_AS(max_interval_family(CyclicOrder::identity(6), 5, 3), InvalidParameter);
    CHECK_THROWS_AS(max_interval_family(CyclicOrder::identity(21), 2, 2), ResourceGuard);
  }

  TEST_CASE("interval maxima agree with the exhaustive oracle and are point stars in the interior") {
    std::mt19937_64 rng(4);
    for (int n = 2; n <= 8; ++n) {
      for (int k = 2; k <= 4; ++k) {
        for (int r = 1; r < n && k * r <= (k - 1) * n; ++r) {
          const auto order = CyclicOrder::from_rank(n, std::uniform_int_distribution<std::uint64_t>(0, factorial(n - 1) - 1)(rng));
          const auto got = max_interval_family(order, r, k);
          oracle::Members universe;
          for (const auto& s : sets_of(intervals_of(order, r))) universe.push_back(s.elements());
          const auto want = oracle::max_family_exhaustive(universe, k);
          REQUIRE(got.size == static_cast<int>(want.size));
          CHECK(got.size == r);
          CHECK(got.witnesses.size() == want.witnesses.size());
          if (k * r < (k - 1) * n) {
            for (const auto& w : got.witnesses) CHECK(common_element(w.sets()) != 0);
            CHECK(got.witnesses.size() == static_cast<std::size_t>(n));
          }
        }
      }
    }
  }

  TEST_CASE("saturation examples") {
    const auto id6 = CyclicOrder::identity(6);
    const auto through3 = fam_of(6, 3, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {3, 5, 6}});
    const auto rec = saturation(through3, id6, 3);
    CHECK(rec.count == 3);
    CHECK(rec.point == 3);
    const auto short_fam = fam_of(6, 3, {{1, 2, 3}, {2, 3, 4}});
    CHECK_FALSE(saturation(short_fam, id6, 3).saturated());
    const auto s1 = saturation(star(GroundSet(6), 3, 1), id6, 3);
    CHECK(s1.point == 1);
    CHECK(s1.count == 3);
    CHECK_THROWS_AS(saturation(star(GroundSet(6), 4, 1), id6, 3), InvalidParameter);
    const auto bad = fam_of(6, 3, {{1, 2, 3}, {3, 4, 5}, {5, 6, 1}});
    CHECK_THROWS_AS(saturation(bad, id6, 3), PreconditionViolation);
    CHECK(classify_saturation(bad, id6).count == 3);
    CHECK_FALSE(classify_saturation(bad, id6).saturated());
  }

  TEST_CASE("adjacent transposition examples") {
    const auto id4 = CyclicOrder::identity(4);
    const auto a1 = apply_adjacent_transposition(id4, 1);
    CHECK(std::vector<int>(a1.seq().begin(), a1.seq().end()) == std::vector<int>{2, 1, 3, 4});
    const auto a4 = apply_adjacent_transposition(id4, 4);
    CHECK(std::vector<int>(a4.seq().begin(), a4.seq().end()) == std::vector<int>{2, 3, 1, 4});
    CHECK(apply_adjacent_transposition(apply_adjacent_transposition(id4, 2), 2) == id4);
    CHECK_THROWS_AS(apply_adjacent_transposition(id4, 5), InvalidParameter);
  }

  TEST_CASE("adjacent transpositions stay canonical and match the raw swap") {
    for (int n = 3; n <= 6; ++n) {
      for (std::uint64_t rank = 0; rank < factorial(n - 1); ++rank) {
        const auto order = CyclicOrder::from_rank(n, rank);
        for (int i = 1; i <= n; ++i) {
          const auto moved = apply_adjacent_transposition(order, i);
          CHECK(moved.at(n) == n);
          std::vector<int> raw(order.seq().begin(), order.seq().end());
          std::swap(raw[static_cast<std::size_t>(i - 1)], raw[static_cast<std::size_t>(i % n)]);
          for (int r = 1; r < n; ++r) {
            auto a = oracle::cyclic_windows(raw, r);
            auto b = oracle::cyclic_windows(std::vector<int>(moved.seq().begin(), moved.seq().end()), r);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
          }
          if (i <= n - 2) CHECK(apply_adjacent_transposition(moved, i) == order);
        }
        CHECK(apply_adjacent_transposition(apply_adjacent_transposition(order, n - 1), n) == order);
        CHECK(apply_adjacent_transposition(apply_adjacent_transposition(order, n), n - 1) == order);
      }
    }
  }

  TEST_CASE("transposition edge examples") {
    const auto fam = star(GroundSet(6), 3, 6);
    const auto id6 = CyclicOrder::identity(6);
    CHECK(check_lemma3_edge(fam, id6, 2, 3) == Lemma3Outcome::both_saturated_same_v);
    CHECK(check_lemma3_edge(fam, id6, 6, 3) == Lemma3Outcome::not_applicable);
    CHECK(check_lemma3_edge(fam, id6, 5, 3) == Lemma3Outcome::not_applicable);
    const auto thinned = without(fam, ESet{1, 3, 6});
    CHECK(saturation(thinned, id6, 3).point == 6);
    CHECK(check_lemma3_edge(thinned, id6, 2, 3) == Lemma3Outcome::neighbor_unsaturated);
    CHECK(check_lemma3_edge(fam_of(6, 3, {{1, 2, 3}}), id6, 2, 3) == Lemma3Outcome::not_applicable);
    CHECK(to_string(Lemma3Outcome::violation) == "violation");
  }

  TEST_CASE("transpositions keep the saturation point on every order for full stars under both exclusion rules") {
    for (int n = 4; n <= 6; ++n) {
      for (int k = 2; k <= 4; ++k) {
        for (int r = 1; r < n && k * r < (k - 1) * n; ++r) {
          for (int v = 1; v <= n; v += 2) {
            const auto fam = star(GroundSet(n), r, v);
            for (std::uint64_t rank = 0; rank < factorial(n - 1); ++rank) {
              const auto order = CyclicOrder::from_rank(n, rank);
              for (int i = 1; i <= n; ++i) {
                CHECK(check_lemma3_edge(fam, order, i, k, ExclusionRule::positional) != Lemma3Outcome::violation);
                CHECK(check_lemma3_edge(fam, order, i, k, ExclusionRule::label) != Lemma3Outcome::violation);
              }
            }
          }
        }
      }
    }
  }

  TEST_CASE("census examples") {
    const auto one = SetFamily(GroundSet(5), 3, {ESet{1, 2, 4}});
    const auto c1 = saturation_census(one, 2);
    CHECK(c1.per_order.size() == 24);
    CHECK(c1.interval_total == 12);
    CHECK(c1.interval_total == oracle::cyclic_orders_with_interval(5, {1, 2, 4}));
    CHECK(c1.identity_check);

    const auto empty = saturation_census(SetFamily(GroundSet(5), 3), 2);
    CHECK(empty.interval_total == 0);
    CHECK(empty.unsaturated_count == 24);

    const auto st = saturation_census(star(GroundSet(5), 2, 1), 2);
    CHECK(st.checked);
    CHECK(st.interval_total == 48);
    CHECK(st.identity_check);
    CHECK(st.unsaturated_count == 0);
    for (const auto& rec : st.per_order) CHECK(rec.point == 1);

    CHECK_THROWS_AS(saturation_census(SetFamily(GroundSet(10), 3), 2), ResourceGuard);
  }

  TEST_CASE("census totals match the double count on random families") {
    std::mt19937_64 rng(5);
    for (int n = 3; n <= 6; ++n) {
      for (int r = 1; r < n; ++r) {
        for (int trial = 0; trial < 5; ++trial) {
          const auto fam = random_family(rng, n, r);
          const auto c = saturation_census(fam, 2, 2);
          CHECK(c.identity_check);
          CHECK(c.expected_total == factorial(r) * factorial(n - r) * fam.size());
          std::uint64_t oracle_total = 0;
          for (const auto& s : fam) oracle_total += oracle::cyclic_orders_with_interval(n, s.elements());
          CHECK(c.interval_total == oracle_total);
        }
      }
    }
  }

  TEST_CASE("census is independent of thread count and writes csv") {
    const auto fam = star(GroundSet(6), 3, 2);
    const auto a = saturation_census(fam, 3, 1);
    const auto b = saturation_census(fam, 3, 4);
    std::ostringstream sa, sb;
    write_census_csv(a, sa);
    write_census_csv(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("order_index,count,status,v\n0,3,saturated,2\n", 0) == 0);
  }
}
