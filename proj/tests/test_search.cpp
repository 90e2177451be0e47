#include <random>

#include "doctest.h"
#include "kwise/error.hpp"
#include "kwise/search.hpp"
#include "oracles.hpp"

using namespace kwise;

namespace {

oracle::Members universe_members(const std::vector<ESet>& universe) {
  oracle::Members out;
  for (const auto& s : universe) out.push_back(s.elements());
  return out;
}

std::vector<oracle::Members> witness_members(const ExtremalWitness& w) {
  std::vector<oracle::Members> out;
  for (const auto& f : w.families) {
    auto m = oracle::members_of(f);
    std::sort(m.begin(), m.end());
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SearchProblem problem_of(int n, int r, int k, std::vector<ESet> universe) {
  SearchProblem p{GroundSet(n), r, std::move(universe), k};
  return p;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("search examples") {
    const auto p52 = problem_of(5, 2, 2, all_r_subsets(GroundSet(5), 2));
    const auto w52 = max_family_search(p52);
    CHECK(w52.size == 4);
    CHECK(w52.families.size() == 5);
    for (std::size_t i = 0; i < w52.families.size(); ++i) {
      CHECK(w52.classes[i].is_star);
      CHECK(w52.families[i] == star(GroundSet(5), 2, w52.classes[i].center));
    }

    const auto w423 = max_family_search(problem_of(4, 2, 3, all_r_subsets(GroundSet(4), 2)));
    CHECK(w423.size == 3);
    for (const auto& c : w423.classes) CHECK(c.is_star);

    const auto w643 = max_family_search(problem_of(6, 4, 3, all_r_subsets(GroundSet(6), 4)));
    CHECK(w643.size == 10);
  }

  TEST_CASE("branch and bound equals the exhaustive oracle for universes up to 14 sets") {
    std::mt19937_64 rng(7);
    int instances = 0;
    for (int n = 3; n <= 7; ++n) {
      for (int r = 1; r <= n; ++r) {
        for (int k = 2; k <= 4; ++k) {
          auto all = all_r_subsets(GroundSet(n), r);
          for (int trial = 0; trial < 3; ++trial) {
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<ESet> universe(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(all.size(), 4 + static_cast<std::size_t>(rng() % 11))));
            const auto got = max_family_search(problem_of(n, r, k, universe), 1 + trial);
            const auto want = oracle::max_family_exhaustive(universe_members(universe), k);
            REQUIRE(got.size == want.size);
            CHECK(got.witness_count == want.witnesses.size());
            CHECK(witness_members(got) == want.witnesses);
            ++instances;
          }
        }
      }
    }
    CHECK(instances > 50);
  }

  TEST_CASE("witnesses are k-wise intersecting and classified consistently") {
    for (int n = 4; n <= 6; ++n) {
      for (int r = 2; r < n; ++r) {
        for (int k = 2; k <= 4; ++k) {
          if (k * r > (k - 1) * n) continue;
          const auto v = verify_frankl(n, r, k);
          REQUIRE(v.witness.families.size() == v.witness.classes.size());
          for (std::size_t i = 0; i < v.witness.families.size(); ++i) {
            const auto& f = v.witness.families[i];
            CHECK(is_k_wise_intersecting(f, k));
            const auto cls = v.witness.classes[i];
            const auto mx = max_star(f);
            CHECK(cls.is_star == (mx.size == f.size()));
            if (cls.is_star) CHECK(star_restriction(f, cls.center).size() == f.size());
          }
        }
      }
    }
  }

  TEST_CASE("maximum size is non-increasing in k") {
    for (int n = 3; n <= 6; ++n) {
      for (int r = 1; r <= std::min(n, 4); ++r) {
        std::size_t previous = SIZE_MAX;
        for (int k = 2; k <= 4; ++k) {
          const auto w = max_family_search(problem_of(n, r, k, all_r_subsets(GroundSet(n), r)));
          CHECK(w.size <= previous);
          previous = w.size;
        }
      }
    }
  }

  TEST_CASE("verify_frankl examples") {
    const auto v633 = verify_frankl(6, 3, 3);
    CHECK(v633.regime == Regime::strict_interior);
    CHECK(v633.bound == 10);
    CHECK(v633.bound_matches);
    CHECK(v633.all_extremal_are_stars == true);
    CHECK(v633.witness.witness_count == 6);

    const auto v422 = verify_frankl(4, 2, 2);
    CHECK(v422.regime == Regime::boundary);
    CHECK(v422.witness.size == 3);
    CHECK(v422.bound_matches);
    CHECK_FALSE(v422.all_extremal_are_stars.has_value());
    const bool has_triangle = std::any_of(v422.witness.classes.begin(), v422.witness.classes.end(),
                                          [](const StarClass& c) { return !c.is_star; });
    CHECK(has_triangle);

    for (int n = 2; n <= 7; ++n) {
      for (int k = 2; k <= 4; ++k) {
        const auto v = verify_frankl(n, 1, k);
        CHECK(v.witness.size == 1);
      }
    }
    CHECK_THROWS_AS(verify_frankl(6, 5, 3), InvalidParameter);
    CHECK_THROWS_AS(verify_frankl(10, 4, 2), ResourceGuard);
  }

  TEST_CASE("witness cap sets the overflow flag") {
    const auto v = verify_frankl(6, 3, 2);
    CHECK(v.witness.size == 10);
    CHECK(v.witness.witness_count == 1024);
    CHECK(v.witness.overflow);
    CHECK(v.witness.families.size() == kDefaultWitnessCap);
  }

  TEST_CASE("search results do not depend on thread count") {
    const auto a = verify_frankl(7, 3, 2, 1);
    const auto b = verify_frankl(7, 3, 2, 4);
    CHECK(a.witness.size == b.witness.size);
    CHECK(a.witness.families == b.witness.families);
    CHECK(a.witness.witness_count == b.witness.witness_count);
  }

  TEST_CASE("search problem validation") {
    CHECK_THROWS_AS(max_family_search(problem_of(4, 2, 2, {ESet{1, 2}, ESet{1, 2}})), InvalidParameter);
    CHECK_THROWS_AS(max_family_search(problem_of(4, 2, 2, {ESet{1, 2, 3}})), InvalidParameter);
    CHECK_THROWS_AS(max_family_search(problem_of(4, 2, 1, {ESet{1, 2}})), InvalidParameter);
    CHECK(max_family_search(problem_of(4, 2, 2, {})).size == 0);
    const auto order = search_order({ESet{2, 3}, ESet{1, 4}, ESet{3, 4}, ESet{1, 2}});
    CHECK(order == std::vector<ESet>{ESet{1, 2}, ESet{1, 4}, ESet{2, 3}, ESet{3, 4}});
  }

  TEST_CASE("stability examples") {
    const auto s = stability_audit(6, 3, 3, Rational(1, 2));
    CHECK(s.delta == Rational(1, 7776));
    CHECK(s.min_size == 10);
    CHECK(s.families_examined == 6);
    CHECK(s.violations.empty());

    const auto zero = stability_audit(6, 3, 3, Rational(0));
    CHECK(zero.delta == Rational(0));
    CHECK(zero.threshold == Rational(10));
    CHECK(zero.families_examined == verify_frankl(6, 3, 3).witness.witness_count);

    const auto s743 = stability_audit(7, 4, 3, Rational(9, 10));
    CHECK(s743.violations.empty());
    CHECK(s743.families_examined >= 7);

    CHECK_THROWS_AS(stability_audit(6, 4, 3, Rational(1, 2)), InvalidParameter);
    CHECK_THROWS_AS(stability_audit(6, 3, 3, Rational(1)), InvalidParameter);
    CHECK_THROWS_AS(stability_audit(8, 3, 3, Rational(1, 2)), ResourceGuard);
  }

  TEST_CASE("stability counts agree with the exhaustive oracle on a small instance") {
    const auto s = stability_audit(5, 2, 2, Rational(9, 10));
    oracle::Members universe;
    for (const auto& m : oracle::r_subsets(5, 2)) universe.push_back(m);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1u << universe.size()); ++mask) {
      oracle::Members fam;
      for (std::size_t i = 0; i < universe.size(); ++i) {
        if ((mask >> i) & 1u) fam.push_back(universe[i]);
      }
      if (fam.size() >= s.min_size && oracle::k_wise_by_subsets(fam, 2)) ++count;
    }
    CHECK(s.families_examined == count);
  }
}
