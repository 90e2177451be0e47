#include "kwise/permutation.hpp"

#include <bit>

#include "kwise/error.hpp"

namespace kwise {

std::uint64_t factorial(int m) {
  if (m < 0 || m > 20) throw InvalidParameter("factorial argument out of range: " + std::to_string(m));
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t lehmer_rank(std::span<const int> perm) {
  const int m = static_cast<int>(perm.size());
  if (m > 20) throw InvalidParameter("permutation too long to rank");
  // Bit j set while value j+1 is still unused.
  std::uint32_t unused = (1u << m) - 1u;
  std::uint64_t rank = 0;
  for (int i = 0; i < m; ++i) {
    const std::uint32_t bit = 1u << (perm[i] - 1);
    const int smaller = std::popcount(unused & (bit - 1u));
    rank = rank * static_cast<std::uint64_t>(m - i) + static_cast<std::uint64_t>(smaller);
    unused &= ~bit;
  }
  return rank;
}

std::vector<int> lehmer_unrank(int m, std::uint64_t rank) {
  if (m < 0 || m > 20) throw InvalidParameter("permutation length out of range");
  if (rank >= factorial(m)) throw InvalidParameter("permutation rank out of range");
  std::vector<int> digits(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(m - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> perm;
  perm.reserve(static_cast<std::size_t>(m));
  for (int d : digits) {
    perm.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + d);
  }
  return perm;
}

bool is_permutation_of_1_to_m(std::span<const int> perm) {
  std::vector<bool> seen(perm.size() + 1, false);
  for (int v : perm) {
    if (v < 1 || v > static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

}  // namespace kwise
