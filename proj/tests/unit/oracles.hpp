#pragma once
// Slow reference implementations written straight from the definitions.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "resopt/graph.hpp"

namespace oracle {

using resopt::Graph;
using resopt::NodeId;

inline int outside_in_neighbors(const Graph& g, NodeId v,
                                const std::vector<int>& side, int own) {
  int c = 0;
  for (NodeId j : g.in_neighbors(v)) c += side[j] != own;
  return c;
}

// Enumerates every assignment of nodes to {none, S1, S2}: O(3^n).
inline bool rs_robust(const Graph& g, int r, int s) {
  const int n = g.size();
  std::vector<int> side(n, 0);
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    int size1 = 0, size2 = 0;
    for (int i = 0; i < n; ++i) {
      side[i] = static_cast<int>(c % 3);
      c /= 3;
      size1 += side[i] == 1;
      size2 += side[i] == 2;
    }
    if (size1 == 0 || size2 == 0) continue;
    int x1 = 0, x2 = 0;
    for (int i = 0; i < n; ++i) {
      if (side[i] == 0) continue;
      if (outside_in_neighbors(g, i, side, side[i]) >= r) {
        (side[i] == 1 ? x1 : x2)++;
      }
    }
    if (x1 == size1 || x2 == size2 || x1 + x2 >= s) continue;
    return false;
  }
  return true;
}

inline bool r_robust(const Graph& g, int r) { return rs_robust(g, r, 1); }

inline bool is_r_local(const Graph& g, const std::vector<bool>& in, int r) {
  for (NodeId v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    int fed = 0;
    for (NodeId j : g.in_neighbors(v)) fed += in[j];
    if (fed > r) return false;
  }
  return true;
}

// Largest proper r-local subset by enumerating all 2^n subsets.
inline int max_r_local(const Graph& g, int r) {
  const int n = g.size();
  int best = 0;
  for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
    std::vector<bool> in(n);
    int size = 0;
    for (int i = 0; i < n; ++i) {
      in[i] = (m >> i) & 1;
      size += in[i];
    }
    if (size > best && is_r_local(g, in, r)) best = size;
  }
  return best;
}

inline bool reaches_all(const Graph& g, NodeId root) {
  std::vector<bool> seen(g.size(), false);
  std::vector<NodeId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : g.out_neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline bool rooted(const Graph& g) {
  for (NodeId v = 0; v < g.size(); ++v) {
    if (reaches_all(g, v)) return true;
  }
  return g.size() == 0;
}

}  // namespace oracle
