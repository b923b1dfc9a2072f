#include "resopt/robustness.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace resopt {

int default_size_guard() {
  if (const char* env = std::getenv("RESOPT_SIZE_GUARD")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      // fall through to the built-in default
    }
  }
  return 16;
}

SizeGuardError::SizeGuardError(int n, int guard)
    : std::runtime_error("exact check refused: " + std::to_string(n) +
                         " nodes exceeds size guard " + std::to_string(guard) +
                         " (use --force or RESOPT_SIZE_GUARD)"),
      nodes_(n),
      guard_(guard) {}

void enforce_size_guard(const Graph& g, const ExactCheckOptions& opts) {
  const int guard = opts.max_nodes > 0 ? opts.max_nodes : default_size_guard();
  if (g.size() > kForcedSizeCeiling) {
    throw SizeGuardError(g.size(), kForcedSizeCeiling);
  }
  if (g.size() > guard && !opts.force) throw SizeGuardError(g.size(), guard);
}

namespace {

int outside_in_count(const Graph& g, NodeId i, NodeMask set) {
  return std::popcount(g.in_mask(i) & ~set);
}

// Number of members of `set` with at least r in-neighbors outside `set`.
int reaching_members(const Graph& g, NodeMask set, int r) {
  int c = 0;
  for (NodeMask m = set; m != 0; m &= m - 1) {
    if (outside_in_count(g, std::countr_zero(m), set) >= r) ++c;
  }
  return c;
}

std::vector<NodeId> checked_members(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> v(s.begin(), s.end());
  for (NodeId x : v) {
    if (x < 0 || x >= g.size()) throw std::out_of_range("node out of range");
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool is_r_reachable(const Graph& g, std::span<const NodeId> set, int r) {
  auto members = checked_members(g, set);
  if (members.empty()) throw std::invalid_argument("r-reachable: empty set");
  std::vector<bool> in_set(g.size(), false);
  for (NodeId v : members) in_set[v] = true;
  for (NodeId v : members) {
    int outside = 0;
    for (NodeId u : g.in_neighbors(v)) outside += in_set[u] ? 0 : 1;
    if (outside >= r) return true;
  }
  return false;
}

bool is_r_local(const Graph& g, std::span<const NodeId> set, int r) {
  auto members = checked_members(g, set);
  std::vector<bool> in_set(g.size(), false);
  for (NodeId v : members) in_set[v] = true;
  for (NodeId v = 0; v < g.size(); ++v) {
    if (in_set[v]) continue;
    int inside = 0;
    for (NodeId u : g.in_neighbors(v)) inside += in_set[u] ? 1 : 0;
    if (inside > r) return false;
  }
  return true;
}

RobustnessResult is_r_robust(const Graph& g, int r,
                             const ExactCheckOptions& opts) {
  enforce_size_guard(g, opts);
  const int n = g.size();
  if (r <= 0 || n < 2) return {};
  const NodeMask full = (NodeMask{1} << n) - 1;
  const std::size_t count = std::size_t{1} << n;

  // stuck[S]: S is nonempty and not r-reachable.
  // below[T]: some nonempty subset of T is stuck.
  std::vector<std::uint8_t> stuck(count, 0);
  for (NodeMask s = 1; s <= full; ++s) {
    bool any = false;
    for (NodeMask m = s; m != 0 && !any; m &= m - 1) {
      any = outside_in_count(g, std::countr_zero(m), s) >= r;
    }
    stuck[s] = any ? 0 : 1;
  }
  std::vector<std::uint8_t> below(stuck);
  for (int b = 0; b < n; ++b) {
    const NodeMask bit = NodeMask{1} << b;
    for (NodeMask s = 1; s <= full; ++s) {
      if (s & bit) below[s] |= below[s ^ bit];
    }
  }
  for (NodeMask s1 = 1; s1 < full; ++s1) {
    if (!stuck[s1] || !below[full ^ s1]) continue;
    const NodeMask rest = full ^ s1;
    for (NodeMask s2 = rest; s2 != 0; s2 = (s2 - 1) & rest) {
      if (stuck[s2]) {
        return {false, SubsetPair{mask_to_nodes(s1), mask_to_nodes(s2)}};
      }
    }
  }
  return {};
}

RobustnessResult is_rs_robust(const Graph& g, int r, int s,
                              const ExactCheckOptions& opts) {
  enforce_size_guard(g, opts);
  const int n = g.size();
  if (r <= 0 || s <= 0 || n < 2) return {};
  const NodeMask full = (NodeMask{1} << n) - 1;
  const std::size_t count = std::size_t{1} << n;
  constexpr std::uint8_t kNone = 0xff;

  // reach[S]: members of S with >= r outside in-neighbors, or kNone when
  // every member qualifies (conditions 1/2 hold for S).
  std::vector<std::uint8_t> reach(count, kNone);
  for (NodeMask m = 1; m <= full; ++m) {
    const int c = reaching_members(g, m, r);
    if (c < std::popcount(m)) reach[m] = static_cast<std::uint8_t>(c);
  }
  // least[T]: min reach over subsets of T that fail conditions 1/2.
  std::vector<std::uint8_t> least(reach);
  for (int b = 0; b < n; ++b) {
    const NodeMask bit = NodeMask{1} << b;
    for (NodeMask m = 1; m <= full; ++m) {
      if (m & bit) least[m] = std::min(least[m], least[m ^ bit]);
    }
  }
  for (NodeMask s1 = 1; s1 < full; ++s1) {
    if (reach[s1] == kNone) continue;
    const NodeMask rest = full ^ s1;
    if (least[rest] == kNone || reach[s1] + least[rest] >= s) continue;
    for (NodeMask s2 = rest; s2 != 0; s2 = (s2 - 1) & rest) {
      if (reach[s2] != kNone && reach[s1] + reach[s2] < s) {
        return {false, SubsetPair{mask_to_nodes(s1), mask_to_nodes(s2)}};
      }
    }
  }
  return {};
}

int max_robustness(const Graph& g, const ExactCheckOptions& opts) {
  enforce_size_guard(g, opts);
  if (g.size() < 2) return 0;
  // Two singletons force some in-degree >= r, so r never exceeds it.
  int best = 0;
  for (int r = 1; r <= g.max_in_degree(); ++r) {
    if (!is_r_robust(g, r, opts)) break;
    best = r;
  }
  return best;
}

bool violates_rs(const Graph& g, const SubsetPair& pair, int r, int s) {
  auto a = checked_members(g, pair.first);
  auto b = checked_members(g, pair.second);
  if (a.empty() || b.empty()) return false;
  for (NodeId v : a) {
    if (std::binary_search(b.begin(), b.end(), v)) return false;
  }
  auto count = [&](const std::vector<NodeId>& set, bool& all) {
    std::vector<bool> in_set(g.size(), false);
    for (NodeId v : set) in_set[v] = true;
    int c = 0;
    for (NodeId v : set) {
      int outside = 0;
      for (NodeId u : g.in_neighbors(v)) outside += in_set[u] ? 0 : 1;
      if (outside >= r) ++c;
    }
    all = c == static_cast<int>(set.size());
    return c;
  };
  bool all_a = false;
  bool all_b = false;
  const int ca = count(a, all_a);
  const int cb = count(b, all_b);
  return !all_a && !all_b && ca + cb < s;
}

}  // namespace resopt
