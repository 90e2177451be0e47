#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kwise/rational.hpp"
#include "kwise/setfam.hpp"

namespace kwise {

// Cayley graph of S_m generated by the adjacent transpositions (12), ...,
// (m-1 m), acting on positions: sigma ~ sigma o (j j+1). Vertices are indexed
// by the lexicographic (Lehmer) rank of the permutation; rank 0 is the
// identity.
class CayleyGraph {
 public:
  static constexpr int kMaxMaterialized = 9;

  // 2 <= m <= 9; larger degrees must use implicit_neighbor().
  explicit CayleyGraph(int m);

  int m() const noexcept { return m_; }
  int degree() const noexcept { return m_ - 1; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
    return {adjacency_.data() + v * static_cast<std::size_t>(degree()), static_cast<std::size_t>(degree())};
  }
  std::vector<int> permutation(std::size_t v) const;
  std::size_t index_of(std::span<const int> perm) const;

 private:
  int m_;
  std::size_t vertex_count_;
  std::vector<std::uint32_t> adjacency_;  // degree() entries per vertex, generator order
};

// Rank of rank_perm o (j j+1) in S_m without materializing the graph
// (1 <= generator <= m - 1, m <= 20).
std::uint64_t implicit_neighbor(int m, std::uint64_t rank, int generator);

// Breadth-first distances from `source`; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const CayleyGraph& graph, std::size_t source);

enum class ExpansionMode { exhaustive, heuristic };
std::string_view to_string(ExpansionMode mode);

struct ExpansionReport {
  int m = 0;
  Rational alpha;
  ExpansionMode mode = ExpansionMode::exhaustive;
  // Exhaustive: every S with 1 <= |S| <= |V|/2 has |N(S)| >= alpha|S|.
  // Heuristic: no counterexample was found.
  bool holds = false;
  std::size_t worst_set_size = 0;  // smallest |S| attaining worst_ratio
  Rational worst_ratio;            // min |N(S)|/|S| over the sets examined
  std::uint64_t sets_examined = 0;
};

struct HeuristicOptions {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 200000;
  int restarts = 8;
};

// Exhaustive mode needs |V| <= 24 and checks every S containing the
// identity (the graph is vertex-transitive), boundary |S| = |V|/2 included.
ExpansionReport verify_expansion(const CayleyGraph& graph, Rational alpha, ExpansionMode mode,
                                 const HeuristicOptions& options = {});

// Smallest nonzero eigenvalue of the graph Laplacian; requires |V| <= 5040.
double spectral_gap(const CayleyGraph& graph);

// Vertex expansion implied by the gap for sets with |S| <= |V|/2:
// e(S, S^c) >= gap |S| / 2 and each outside vertex absorbs <= degree edges.
double implied_vertex_expansion(double gap, int degree);

struct Component {
  std::size_t size = 0;
  std::uint64_t first_order = 0;  // smallest rank in the component
  int point = 0;                  // common saturation point, 0 when mixed
  bool mixed = false;
};

struct ComponentReport {
  std::vector<Component> components;  // largest first, ties by first_order
  std::size_t largest_size = 0;
  std::size_t saturated_count = 0;
  std::uint64_t total_orders = 0;
};

// Components of the subgraph of saturated cyclic orders of [n] under
// A_1, ..., A_{n-2}. Refuses n > 8.
ComponentReport saturated_components(const SetFamily& family, int k, int threads = 1);

// 1 - |F| / binomial(n-1, r-1).
Rational missing_fraction(const SetFamily& family);

// (1 - n^3 r delta)(n-1)!, the size guaranteed for the largest component.
Rational large_component_bound(int n, int r, const Rational& delta);

}  // namespace kwise
