#include "kwise/setfam.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

#include "kwise/error.hpp"

namespace kwise {

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1 || n > kMaxGround) {
    throw InvalidParameter("ground set size must be in [1, 64], got " + std::to_string(n));
  }
}

ESet::ESet(std::initializer_list<int> elements)
    : ESet(from_elements(std::span<const int>(elements.begin(), elements.size()))) {}

ESet ESet::from_elements(std::span<const int> elements) {
  std::uint64_t bits = 0;
  for (int v : elements) {
    if (v < 1 || v > kMaxGround) throw InvalidParameter("element out of range: " + std::to_string(v));
    bits |= std::uint64_t{1} << (v - 1);
  }
  return ESet(bits);
}

int ESet::size() const noexcept { return std::popcount(bits_); }

int ESet::smallest() const noexcept { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

std::vector<int> ESet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string to_string(ESet set) {
  std::string out = "{";
  bool first = true;
  for (int v : set.elements()) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

SetFamily::SetFamily(GroundSet ground, int r, std::vector<ESet> sets)
    : ground_(ground), r_(r), sets_(std::move(sets)) {
  if (r < 1 || r > ground.n()) {
    throw InvalidParameter("uniformity r must be in [1, n], got r=" + std::to_string(r));
  }
  for (const ESet& s : sets_) {
    if (!s.fits(ground_)) throw InvalidParameter("member " + to_string(s) + " is not a subset of [n]");
    if (s.size() != r_) throw InvalidParameter("member " + to_string(s) + " does not have r elements");
  }
  std::sort(sets_.begin(), sets_.end());
  if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end()) {
    throw InvalidParameter("family has duplicate members");
  }
}

bool SetFamily::contains(ESet set) const noexcept {
  return std::binary_search(sets_.begin(), sets_.end(), set);
}

namespace {

struct PascalTable {
  std::array<std::array<std::uint64_t, kMaxGround + 1>, kMaxGround + 1> c{};
  PascalTable() {
    for (int n = 0; n <= kMaxGround; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const PascalTable& pascal() {
  static const PascalTable table;
  return table;
}

// Depth-first search for at most `remaining` further complements whose union
// with `cover` is the full mask.
bool covers(std::span<const std::uint64_t> complements, std::size_t start, int remaining, std::uint64_t cover,
            std::uint64_t full) {
  if (cover == full) return true;
  if (remaining == 0) return false;
  for (std::size_t i = start; i < complements.size(); ++i) {
    const std::uint64_t next = cover | complements[i];
    if (next == cover) continue;  // adds nothing; a shorter tuple already covers the same
    if (covers(complements, i + 1, remaining - 1, next, full)) return true;
  }
  return false;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > kMaxGround) throw InvalidParameter("binomial n out of range: " + std::to_string(n));
  if (k < 0 || k > n) return 0;
  return pascal().c[n][k];
}

std::vector<ESet> all_r_subsets(const GroundSet& ground, int r) {
  if (r < 0 || r > ground.n()) throw InvalidParameter("subset size out of range");
  std::vector<ESet> out;
  out.reserve(static_cast<std::size_t>(binomial(ground.n(), r)));
  if (r == 0) {
    out.emplace_back(0);
    return out;
  }
  const std::uint64_t full = ground.full_mask();
  if (r == ground.n()) {
    out.emplace_back(full);
    return out;
  }
  std::uint64_t x = (std::uint64_t{1} << r) - 1;
  while (true) {
    out.emplace_back(x);
    if (x == (full & ~(full >> r))) break;  // the top r bits of the ground
    // Gosper's hack: next word with the same popcount.
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t rr = x + c;
    x = (((rr ^ x) >> 2) / c) | rr;
  }
  return out;
}

bool is_k_wise_intersecting(std::span<const ESet> sets, const GroundSet& ground, int k) {
  if (k < 2) throw InvalidParameter("k must be at least 2, got " + std::to_string(k));
  const std::uint64_t full = ground.full_mask();
  std::vector<std::uint64_t> complements;
  complements.reserve(sets.size());
  for (const ESet& s : sets) complements.push_back(full & ~s.bits());
  return !covers(complements, 0, k, 0, full);
}

bool is_k_wise_intersecting(const SetFamily& family, int k) {
  return is_k_wise_intersecting(family.sets(), family.ground(), k);
}

SetFamily star(const GroundSet& ground, int r, int v) {
  if (!ground.contains(v)) throw InvalidParameter("star center outside the ground set");
  if (r < 1 || r > ground.n()) throw InvalidParameter("star uniformity out of range");
  // r-subsets containing v are v plus an (r-1)-subset of the other n-1 elements.
  std::vector<ESet> members;
  members.reserve(static_cast<std::size_t>(binomial(ground.n() - 1, r - 1)));
  for (const ESet& s : all_r_subsets(ground, r)) {
    if (s.contains(v)) members.push_back(s);
  }
  return SetFamily(ground, r, std::move(members));
}

SetFamily star_restriction(const SetFamily& family, int v) {
  if (!family.ground().contains(v)) throw InvalidParameter("star center outside the ground set");
  std::vector<ESet> members;
  std::copy_if(family.begin(), family.end(), std::back_inserter(members), [v](ESet s) { return s.contains(v); });
  return SetFamily(family.ground(), family.r(), std::move(members));
}

StarMax max_star(const SetFamily& family) {
  StarMax best{1, 0};
  for (int v = 1; v <= family.n(); ++v) {
    const auto count = static_cast<std::size_t>(
        std::count_if(family.begin(), family.end(), [v](ESet s) { return s.contains(v); }));
    if (count > best.size) best = {v, count};
  }
  return best;
}

int common_element(std::span<const ESet> sets) {
  if (sets.empty()) return 0;
  std::uint64_t meet = ~std::uint64_t{0};
  for (const ESet& s : sets) meet &= s.bits();
  return ESet(meet).smallest();
}

std::uint64_t frankl_bound(int n, int r) {
  if (n < 1 || n > kMaxGround) throw InvalidParameter("n out of range");
  if (r < 1 || r > n) throw InvalidParameter("frankl_bound requires 1 <= r <= n");
  return binomial(n - 1, r - 1);
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::strict_interior: return "strict_interior";
    case Regime::boundary: return "boundary";
    case Regime::outside: return "outside";
  }
  return "unknown";
}

Regime frankl_regime(int n, int r, int k) {
  if (k < 2) throw InvalidParameter("k must be at least 2");
  const long long lhs = static_cast<long long>(k) * r;
  const long long rhs = static_cast<long long>(k - 1) * n;
  if (lhs < rhs) return Regime::strict_interior;
  if (lhs == rhs) return Regime::boundary;
  return Regime::outside;
}

std::string format_family(const SetFamily& family) {
  std::string out = "n=" + std::to_string(family.n()) + " r=" + std::to_string(family.r()) + "\n";
  for (const ESet& s : family) {
    bool first = true;
    for (int v : s.elements()) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

namespace {

int parse_header_field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) {
    throw InvalidParameter("family header must be 'n=<n> r=<r>'");
  }
  const std::string_view digits = token.substr(key.size());
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw InvalidParameter("bad header value in '" + std::string(token) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

SetFamily parse_family(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw InvalidParameter("family text is empty");
  const std::string_view header = trim(lines[i++]);
  const auto space = header.find_first_of(" \t");
  if (space == std::string_view::npos) throw InvalidParameter("family header must be 'n=<n> r=<r>'");
  const int n = parse_header_field(trim(header.substr(0, space)), "n=");
  const int r = parse_header_field(trim(header.substr(space + 1)), "r=");
  const GroundSet ground(n);
  std::vector<ESet> members;
  for (; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    std::vector<int> elements;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view tok = trim(line.substr(0, comma));
      int v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
        throw InvalidParameter("bad element '" + std::string(tok) + "'");
      }
      if (!ground.contains(v)) throw InvalidParameter("element " + std::to_string(v) + " outside [n]");
      elements.push_back(v);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    const ESet s = ESet::from_elements(elements);
    if (s.size() != static_cast<int>(elements.size())) throw InvalidParameter("repeated element in a member");
    members.push_back(s);
  }
  return SetFamily(ground, r, std::move(members));
}

SetFamily read_family(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str());
}

}  // namespace kwise
