#include "kwise/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>

#include "kwise/error.hpp"
#include "kwise/parallel.hpp"

namespace kwise {

namespace {

using Mask = std::uint64_t;

// Unions of exactly j complements of the chosen members, j = 0..k-1,
// deduplicated. A family stays k-wise intersecting after adding a set with
// complement c iff no stored union u has u | c == full.
using Levels = std::vector<std::vector<Mask>>;

enum class Mode { maximize, threshold };

struct BranchResult {
  std::size_t best = 0;
  std::vector<std::vector<int>> witnesses;
  std::uint64_t witness_count = 0;
  std::uint64_t nodes = 0;
};

class Engine {
 public:
  using Report = std::function<void(const std::vector<int>&, bool maximal)>;

  Engine(const std::vector<ESet>& universe, const GroundSet& ground, int k, Mode mode, std::size_t floor,
         std::size_t cap, std::atomic<std::size_t>& shared_best, Report report = {})
      : universe_(universe), full_(ground.full_mask()), k_(k), mode_(mode), floor_(floor), cap_(cap),
        shared_best_(shared_best), report_(std::move(report)) {
    complements_.reserve(universe.size());
    for (const ESet& s : universe) complements_.push_back(full_ & ~s.bits());
  }

  BranchResult run_branch(int first) {
    result_ = {};
    Levels levels(static_cast<std::size_t>(k_));
    levels[0] = {0};
    std::vector<int> cands;
    for (int y = first + 1; y < static_cast<int>(universe_.size()); ++y) cands.push_back(y);
    chosen_.clear();
    extend(levels, cands, first);
    return result_;
  }

 private:
  std::size_t target() const {
    return mode_ == Mode::maximize ? shared_best_.load(std::memory_order_relaxed) : floor_;
  }

  bool conflicts(const Levels& levels, Mask cx, Mask cy) const {
    const Mask pair = cx | cy;
    for (int j = 0; j + 2 <= k_; ++j) {
      for (Mask u : levels[static_cast<std::size_t>(j)]) {
        if ((u | pair) == full_) return true;
      }
    }
    return false;
  }

  bool compatible(const Levels& levels, Mask cy) const {
    for (const auto& level : levels) {
      for (Mask u : level) {
        if ((u | cy) == full_) return false;
      }
    }
    return true;
  }

  // Candidates pairwise compatible with each other can be added together
  // only if they fall in distinct classes of mutually conflicting sets, so
  // a greedy partition into such classes bounds the augmentation.
  std::size_t color_bound(const Levels& levels, const std::vector<int>& cands) const {
    std::vector<std::vector<Mask>> classes;
    for (int y : cands) {
      const Mask cy = complements_[static_cast<std::size_t>(y)];
      bool placed = false;
      for (auto& cls : classes) {
        if (std::all_of(cls.begin(), cls.end(), [&](Mask cz) { return conflicts(levels, cy, cz); })) {
          cls.push_back(cy);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({cy});
    }
    return classes.size();
  }

  bool globally_maximal(const Levels& levels) const {
    for (std::size_t y = 0; y < universe_.size(); ++y) {
      if (std::find(chosen_.begin(), chosen_.end(), static_cast<int>(y)) != chosen_.end()) continue;
      if (compatible(levels, complements_[y])) return false;
    }
    return true;
  }

  void offer() {
    const std::size_t size = chosen_.size();
    if (size > result_.best) {
      result_.best = size;
      result_.witnesses.clear();
      result_.witness_count = 0;
      std::size_t seen = shared_best_.load(std::memory_order_relaxed);
      while (seen < size && !shared_best_.compare_exchange_weak(seen, size, std::memory_order_relaxed)) {
      }
    }
    if (size == result_.best) {
      ++result_.witness_count;
      if (result_.witnesses.size() < cap_) result_.witnesses.push_back(chosen_);
    }
  }

  // Adds universe member x to the family described by (levels, chosen_)
  // and explores extensions by the candidates that follow it.
  void extend(const Levels& levels, const std::vector<int>& cands, int x) {
    const Mask cx = complements_[static_cast<std::size_t>(x)];
    Levels next(levels.size());
    next[0] = levels[0];
    for (std::size_t j = 1; j < levels.size(); ++j) {
      next[j] = levels[j];
      for (Mask u : levels[j - 1]) next[j].push_back(u | cx);
      std::sort(next[j].begin(), next[j].end());
      next[j].erase(std::unique(next[j].begin(), next[j].end()), next[j].end());
    }
    std::vector<int> remaining;
    remaining.reserve(cands.size());
    for (int y : cands) {
      const Mask cy = complements_[static_cast<std::size_t>(y)];
      if (!conflicts(levels, cx, cy)) remaining.push_back(y);
    }
    chosen_.push_back(x);
    visit(next, remaining);
    chosen_.pop_back();
  }

  void visit(const Levels& levels, const std::vector<int>& cands) {
    ++result_.nodes;
    const std::size_t size = chosen_.size();
    if (mode_ == Mode::threshold && size >= floor_ && report_) {
      report_(chosen_, cands.empty() && globally_maximal(levels));
    }
    if (cands.empty()) {
      if (mode_ == Mode::maximize) offer();
      return;
    }
    if (size + cands.size() < target()) return;
    if (size + color_bound(levels, cands) < target()) return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (size + (cands.size() - i) < target()) break;
      const std::vector<int> tail(cands.begin() + static_cast<std::ptrdiff_t>(i) + 1, cands.end());
      extend(levels, tail, cands[i]);
    }
  }

  const std::vector<ESet>& universe_;
  std::vector<Mask> complements_;
  Mask full_;
  int k_;
  Mode mode_;
  std::size_t floor_;
  std::size_t cap_;
  std::atomic<std::size_t>& shared_best_;
  Report report_;
  std::vector<int> chosen_;
  BranchResult result_;
};

void validate_problem(const SearchProblem& problem) {
  if (problem.k < 2) throw InvalidParameter("k must be at least 2");
  if (problem.universe.size() > kMaxUniverse) {
    throw ResourceGuard("search universe has " + std::to_string(problem.universe.size()) +
                        " candidates (limit 200); shrink n or r");
  }
  std::vector<ESet> sorted = problem.universe;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidParameter("search universe has duplicate candidates");
  }
  for (const ESet& s : sorted) {
    if (!s.fits(problem.ground) || s.size() != problem.r) {
      throw InvalidParameter("universe member " + to_string(s) + " is not an r-subset of the ground");
    }
  }
}

SetFamily to_family(const SearchProblem& problem, const std::vector<ESet>& order, const std::vector<int>& ids) {
  std::vector<ESet> members;
  members.reserve(ids.size());
  for (int id : ids) members.push_back(order[static_cast<std::size_t>(id)]);
  return SetFamily(problem.ground, problem.r, std::move(members));
}

bool family_less(const SetFamily& a, const SetFamily& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

StarClass classify_star(const SetFamily& family) {
  const int v = common_element(family.sets());
  return v == 0 ? StarClass{false, 0} : StarClass{true, v};
}

std::vector<ESet> search_order(std::vector<ESet> universe) {
  std::sort(universe.begin(), universe.end(), [](ESet a, ESet b) {
    const bool a1 = a.contains(1);
    const bool b1 = b.contains(1);
    if (a1 != b1) return a1;
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  });
  return universe;
}

ExtremalWitness max_family_search(const SearchProblem& problem, int threads) {
  validate_problem(problem);
  const std::vector<ESet> order = search_order(problem.universe);
  ExtremalWitness out;
  if (order.empty()) {
    out.families.emplace_back(problem.ground, problem.r);
    out.classes.push_back(classify_star(out.families.back()));
    out.witness_count = 1;
    return out;
  }

  std::atomic<std::size_t> best{0};
  std::vector<BranchResult> branches(order.size());
  parallel_for_slices(order.size(), threads, [&](std::size_t begin, std::size_t end) {
    Engine engine(order, problem.ground, problem.k, Mode::maximize, 0, problem.witness_cap, best);
    for (std::size_t b = begin; b < end; ++b) branches[b] = engine.run_branch(static_cast<int>(b));
  });

  for (const auto& br : branches) out.size = std::max(out.size, br.best);
  for (const auto& br : branches) {
    out.nodes += br.nodes;
    if (br.best != out.size) continue;
    out.witness_count += br.witness_count;
    for (const auto& ids : br.witnesses) {
      if (out.families.size() < problem.witness_cap) out.families.push_back(to_family(problem, order, ids));
    }
  }
  out.overflow = out.witness_count > out.families.size();
  std::sort(out.families.begin(), out.families.end(), family_less);
  for (const auto& fam : out.families) out.classes.push_back(classify_star(fam));
  return out;
}

FranklVerification verify_frankl(int n, int r, int k, int threads) {
  const GroundSet ground(n);
  if (r < 1 || r > n) throw InvalidParameter("verify_frankl requires 1 <= r <= n");
  FranklVerification out;
  out.n = n;
  out.r = r;
  out.k = k;
  out.regime = frankl_regime(n, r, k);
  if (out.regime == Regime::outside) throw InvalidParameter("verify_frankl requires k*r <= (k-1)*n");
  if (binomial(n, r) > kMaxUniverse) {
    throw ResourceGuard("binomial(n, r) exceeds the search universe limit of 200; shrink n or r");
  }
  out.bound = frankl_bound(n, r);
  out.witness = max_family_search({ground, r, all_r_subsets(ground, r), k, kDefaultWitnessCap}, threads);
  out.bound_matches = out.witness.size == out.bound;
  if (out.regime == Regime::strict_interior) {
    out.all_extremal_are_stars = std::all_of(out.witness.classes.begin(), out.witness.classes.end(),
                                             [](const StarClass& c) { return c.is_star; });
  }
  return out;
}

StabilityReport stability_audit(int n, int r, int k, const Rational& epsilon, int threads) {
  const GroundSet ground(n);
  if (n > 7) throw ResourceGuard("stability audit refuses n > 7");
  if (r < 1 || r > n) throw InvalidParameter("stability audit requires 1 <= r <= n");
  if (frankl_regime(n, r, k) != Regime::strict_interior) {
    throw InvalidParameter("stability audit requires k*r < (k-1)*n");
  }
  if (epsilon < Rational(0) || epsilon >= Rational(1)) throw InvalidParameter("epsilon must lie in [0, 1)");

  StabilityReport out;
  out.n = n;
  out.r = r;
  out.k = k;
  out.epsilon = epsilon;
  const auto n4 = static_cast<std::int64_t>(n) * n * n * n;
  out.delta = epsilon / Rational(static_cast<std::int64_t>(r) * n4);
  const Rational bound(static_cast<std::int64_t>(frankl_bound(n, r)));
  out.threshold = (Rational(1) - out.delta) * bound;
  out.star_threshold = (Rational(1) - epsilon / Rational(n)) * bound;
  const std::int64_t ceil_threshold =
      (out.threshold.num() + out.threshold.den() - 1) / out.threshold.den();
  out.min_size = static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_threshold));

  const std::vector<ESet> order = search_order(all_r_subsets(ground, r));
  std::atomic<std::size_t> unused{0};
  std::vector<StabilityReport> partial(order.size());
  parallel_for_slices(order.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      StabilityReport& slot = partial[b];
      Engine engine(order, ground, k, Mode::threshold, out.min_size, 0, unused,
                    [&](const std::vector<int>& ids, bool maximal) {
                      ++slot.families_examined;
                      if (maximal) ++slot.maximal_families;
                      std::vector<ESet> members;
                      for (int id : ids) members.push_back(order[static_cast<std::size_t>(id)]);
                      SetFamily fam(ground, r, std::move(members));
                      const StarMax largest = max_star(fam);
                      if (Rational(static_cast<std::int64_t>(largest.size)) < out.star_threshold) {
                        slot.violations.push_back(std::move(fam));
                      }
                    });
      engine.run_branch(static_cast<int>(b));
    }
  });
  for (auto& p : partial) {
    out.families_examined += p.families_examined;
    out.maximal_families += p.maximal_families;
    for (auto& v : p.violations) out.violations.push_back(std::move(v));
  }
  return out;
}

}  // namespace kwise
