#include "kwise/cayley.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "kwise/circle.hpp"
#include "kwise/error.hpp"
#include "kwise/permutation.hpp"

namespace kwise {

CayleyGraph::CayleyGraph(int m) : m_(m) {
  if (m < 2) throw InvalidParameter("Cayley graph needs m >= 2");
  if (m > kMaxMaterialized) {
    throw ResourceGuard("Cayley graph refuses to materialize m > 9; use implicit_neighbor()");
  }
  vertex_count_ = static_cast<std::size_t>(factorial(m));
  adjacency_.resize(vertex_count_ * static_cast<std::size_t>(degree()));
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  std::size_t v = 0;
  do {
    for (int j = 0; j < degree(); ++j) {
      std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
      adjacency_[v * static_cast<std::size_t>(degree()) + static_cast<std::size_t>(j)] =
          static_cast<std::uint32_t>(lehmer_rank(perm));
      std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
    }
    ++v;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<int> CayleyGraph::permutation(std::size_t v) const { return lehmer_unrank(m_, v); }

std::size_t CayleyGraph::index_of(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != m_ || !is_permutation_of_1_to_m(perm)) {
    throw InvalidParameter("not a permutation of [m]");
  }
  return static_cast<std::size_t>(lehmer_rank(perm));
}

std::uint64_t implicit_neighbor(int m, std::uint64_t rank, int generator) {
  if (generator < 1 || generator > m - 1) throw InvalidParameter("generator index must be in [1, m-1]");
  std::vector<int> perm = lehmer_unrank(m, rank);
  std::swap(perm[static_cast<std::size_t>(generator - 1)], perm[static_cast<std::size_t>(generator)]);
  return lehmer_rank(perm);
}

std::vector<int> bfs_distances(const CayleyGraph& graph, std::size_t source) {
  std::vector<int> dist(graph.vertex_count(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : graph.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::string_view to_string(ExpansionMode mode) {
  return mode == ExpansionMode::exhaustive ? "exhaustive" : "heuristic";
}

namespace {

// Running minimum of |N(S)|/|S|, ties resolved toward the smaller |S|.
struct WorstTracker {
  std::uint64_t best_n = 0;
  std::uint64_t best_s = 0;

  void offer(std::uint64_t boundary, std::uint64_t size) {
    if (best_s == 0) {
      best_n = boundary;
      best_s = size;
      return;
    }
    const auto lhs = static_cast<unsigned __int128>(boundary) * best_s;
    const auto rhs = static_cast<unsigned __int128>(best_n) * size;
    if (lhs < rhs || (lhs == rhs && size < best_s)) {
      best_n = boundary;
      best_s = size;
    }
  }
};

struct SubsetWalk {
  std::vector<std::uint32_t> closed_nbhd;
  std::size_t vertices = 0;
  std::size_t max_size = 0;
  WorstTracker worst;
  std::uint64_t examined = 0;

  void walk(std::size_t next, std::uint32_t set, std::uint32_t reach, std::size_t size) {
    ++examined;
    worst.offer(static_cast<std::uint64_t>(std::popcount(reach & ~set)), size);
    if (size == max_size) return;
    for (std::size_t u = next; u < vertices; ++u) {
      walk(u + 1, set | (1u << u), reach | closed_nbhd[u], size + 1);
    }
  }
};

ExpansionReport exhaustive_expansion(const CayleyGraph& graph, const Rational& alpha) {
  const std::size_t vertices = graph.vertex_count();
  if (vertices > 24) throw ResourceGuard("exhaustive expansion check refuses |V| > 24; use heuristic mode");
  SubsetWalk walk;
  walk.vertices = vertices;
  walk.max_size = vertices / 2;
  walk.closed_nbhd.resize(vertices);
  for (std::size_t v = 0; v < vertices; ++v) {
    std::uint32_t mask = 1u << v;
    for (std::uint32_t u : graph.neighbors(v)) mask |= 1u << u;
    walk.closed_nbhd[v] = mask;
  }
  // Vertex transitivity: every set is a translate of one containing vertex 0.
  walk.walk(1, 1u, walk.closed_nbhd[0], 1);

  ExpansionReport out;
  out.m = graph.m();
  out.alpha = alpha;
  out.mode = ExpansionMode::exhaustive;
  out.worst_set_size = static_cast<std::size_t>(walk.worst.best_s);
  out.worst_ratio = Rational(static_cast<std::int64_t>(walk.worst.best_n), static_cast<std::int64_t>(walk.worst.best_s));
  out.holds = out.worst_ratio >= alpha;
  out.sets_examined = walk.examined;
  return out;
}

// Simulated annealing over vertex sets containing the identity, minimizing
// |N(S)|/|S| subject to 1 <= |S| <= |V|/2.
class Annealer {
 public:
  Annealer(const CayleyGraph& graph, std::uint64_t seed)
      : graph_(graph), rng_(seed), in_set_(graph.vertex_count(), 0), inside_count_(graph.vertex_count(), 0),
        slot_(graph.vertex_count(), 0) {}

  void reset() {
    for (std::size_t v : members_) in_set_[v] = 0;
    members_.clear();
    std::fill(inside_count_.begin(), inside_count_.end(), 0);
    boundary_ = 0;
  }

  void add(std::size_t v) {
    if (inside_count_[v] > 0) --boundary_;  // v was in N(S)
    in_set_[v] = 1;
    slot_[v] = members_.size();
    members_.push_back(v);
    for (std::uint32_t u : graph_.neighbors(v)) {
      if (inside_count_[u]++ == 0 && !in_set_[u]) ++boundary_;
    }
  }

  void remove(std::size_t v) {
    in_set_[v] = 0;
    const std::size_t last = members_.back();
    members_[slot_[v]] = last;
    slot_[last] = slot_[v];
    members_.pop_back();
    for (std::uint32_t u : graph_.neighbors(v)) {
      if (--inside_count_[u] == 0 && !in_set_[u]) --boundary_;
    }
    if (inside_count_[v] > 0) ++boundary_;
  }

  void toggle(std::size_t v) { in_set_[v] ? remove(v) : add(v); }

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t boundary() const noexcept { return boundary_; }
  bool contains(std::size_t v) const noexcept { return in_set_[v] != 0; }
  std::mt19937_64& rng() noexcept { return rng_; }
  std::size_t random_member() { return members_[std::uniform_int_distribution<std::size_t>(0, members_.size() - 1)(rng_)]; }

 private:
  const CayleyGraph& graph_;
  std::mt19937_64 rng_;
  std::vector<char> in_set_;
  std::vector<int> inside_count_;
  std::vector<std::size_t> slot_;
  std::vector<std::size_t> members_;
  std::size_t boundary_ = 0;
};

ExpansionReport heuristic_expansion(const CayleyGraph& graph, const Rational& alpha, const HeuristicOptions& options) {
  const std::size_t vertices = graph.vertex_count();
  const std::size_t max_size = vertices / 2;
  Annealer state(graph, options.seed);
  WorstTracker worst;
  std::uint64_t examined = 0;

  // Breadth-first balls around the identity are natural candidates and seed
  // the annealing restarts.
  std::vector<std::size_t> bfs_order;
  {
    const auto dist = bfs_distances(graph, 0);
    bfs_order.resize(vertices);
    std::iota(bfs_order.begin(), bfs_order.end(), std::size_t{0});
    std::stable_sort(bfs_order.begin(), bfs_order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  }
  for (std::size_t s = 1; s <= max_size; ++s) {
    state.add(bfs_order[s - 1]);
    worst.offer(state.boundary(), state.size());
    ++examined;
  }

  const int restarts = std::max(1, options.restarts);
  const std::uint64_t steps = std::max<std::uint64_t>(1, options.iterations / static_cast<std::uint64_t>(restarts));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int restart = 0; restart < restarts; ++restart) {
    state.reset();
    const std::size_t start_size = std::max<std::size_t>(1, max_size * static_cast<std::size_t>(restart + 1) /
                                                                static_cast<std::size_t>(restarts + 1));
    for (std::size_t s = 0; s < start_size; ++s) state.add(bfs_order[s]);
    double current = static_cast<double>(state.boundary()) / static_cast<double>(state.size());
    for (std::uint64_t step = 0; step < steps; ++step) {
      const double temperature = 0.5 * (1.0 - static_cast<double>(step) / static_cast<double>(steps)) + 1e-4;
      // Propose removing a member or adding a neighbor of a member.
      std::size_t v = state.random_member();
      if (unit(state.rng()) < 0.5) {
        const auto nbrs = graph.neighbors(v);
        v = nbrs[std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(state.rng())];
      }
      if (v == 0) continue;  // keep the identity
      if (state.contains(v) ? state.size() <= 1 : state.size() >= max_size) continue;
      state.toggle(v);
      const double proposed = static_cast<double>(state.boundary()) / static_cast<double>(state.size());
      ++examined;
      worst.offer(state.boundary(), state.size());
      if (proposed <= current || unit(state.rng()) < std::exp((current - proposed) / temperature)) {
        current = proposed;
      } else {
        state.toggle(v);
      }
    }
  }

  ExpansionReport out;
  out.m = graph.m();
  out.alpha = alpha;
  out.mode = ExpansionMode::heuristic;
  out.worst_set_size = static_cast<std::size_t>(worst.best_s);
  out.worst_ratio = Rational(static_cast<std::int64_t>(worst.best_n), static_cast<std::int64_t>(worst.best_s));
  out.holds = out.worst_ratio >= alpha;
  out.sets_examined = examined;
  return out;
}

}  // namespace

ExpansionReport verify_expansion(const CayleyGraph& graph, Rational alpha, ExpansionMode mode,
                                 const HeuristicOptions& options) {
  if (alpha <= Rational(0)) throw InvalidParameter("expansion constant alpha must be positive");
  return mode == ExpansionMode::exhaustive ? exhaustive_expansion(graph, alpha)
                                           : heuristic_expansion(graph, alpha, options);
}

double spectral_gap(const CayleyGraph& graph) {
  const std::size_t vertices = graph.vertex_count();
  if (vertices > 5040) throw ResourceGuard("spectral gap refuses |V| > 5040");
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vertices), static_cast<Eigen::Index>(vertices));
  for (std::size_t v = 0; v < vertices; ++v) {
    const auto row = static_cast<Eigen::Index>(v);
    laplacian(row, row) = graph.degree();
    for (std::uint32_t u : graph.neighbors(v)) laplacian(row, static_cast<Eigen::Index>(u)) -= 1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericFailure("Laplacian eigensolve did not converge");
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, std::abs(values(values.size() - 1)));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > 1e-9 * scale) return values(i);
  }
  throw NumericFailure("Laplacian has no nonzero eigenvalue");
}

double implied_vertex_expansion(double gap, int degree) { return gap / (2.0 * degree); }

ComponentReport saturated_components(const SetFamily& family, int k, int threads) {
  const int n = family.n();
  if (n > 8) throw ResourceGuard("saturated_components refuses n > 8");
  const CensusReport census = saturation_census(family, k, threads);
  const std::size_t orders = census.per_order.size();
  const int m = n - 1;

  ComponentReport out;
  out.total_orders = orders;
  std::vector<char> seen(orders, 0);
  std::vector<int> perm;
  for (std::size_t start = 0; start < orders; ++start) {
    if (seen[start] || !census.per_order[start].saturated()) continue;
    Component comp;
    comp.first_order = start;
    comp.point = *census.per_order[start].point;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      ++comp.size;
      if (*census.per_order[v].point != comp.point) comp.mixed = true;
      if (m < 2) continue;
      perm.assign(census.per_order[v].order.seq().begin(), census.per_order[v].order.seq().end() - 1);
      for (int j = 0; j + 1 < m; ++j) {
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
        const auto u = static_cast<std::size_t>(lehmer_rank(perm));
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(j + 1)]);
        if (!seen[u] && census.per_order[u].saturated()) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    if (comp.mixed) comp.point = 0;
    out.saturated_count += comp.size;
    out.components.push_back(comp);
  }
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const Component& a, const Component& b) { return a.size > b.size; });
  out.largest_size = out.components.empty() ? 0 : out.components.front().size;
  return out;
}

Rational missing_fraction(const SetFamily& family) {
  const auto bound = static_cast<std::int64_t>(frankl_bound(family.n(), family.r()));
  return Rational(1) - Rational(static_cast<std::int64_t>(family.size()), bound);
}

Rational large_component_bound(int n, int r, const Rational& delta) {
  const auto cube = static_cast<std::int64_t>(n) * n * n;
  return (Rational(1) - Rational(cube * r) * delta) * Rational(static_cast<std::int64_t>(factorial(n - 1)));
}

}  // namespace kwise
