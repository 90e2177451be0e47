#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kwise {

// m! for 0 <= m <= 20.
std::uint64_t factorial(int m);

// Lexicographic rank of a permutation of {1..m} via its Lehmer code
// (factorial number system). Values are 1-based.
std::uint64_t lehmer_rank(std::span<const int> perm);

// Inverse of lehmer_rank.
std::vector<int> lehmer_unrank(int m, std::uint64_t rank);

// True iff perm is a bijection onto {1..perm.size()}.
bool is_permutation_of_1_to_m(std::span<const int> perm);

}  // namespace kwise
