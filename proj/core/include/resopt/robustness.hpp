#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "resopt/graph.hpp"

namespace resopt {

// Exact robustness checks are exponential in the node count. Graphs larger
// than the guard are refused unless `force` is set. The default guard is 16
// nodes, or the value of the RESOPT_SIZE_GUARD environment variable.
struct ExactCheckOptions {
  int max_nodes = -1;  // -1: use default_size_guard()
  bool force = false;
};

int default_size_guard();

// Hard ceiling for the subset tables, even when forced.
inline constexpr int kForcedSizeCeiling = 28;

class SizeGuardError : public std::runtime_error {
 public:
  SizeGuardError(int n, int guard);
  int nodes() const { return nodes_; }
  int guard() const { return guard_; }

 private:
  int nodes_;
  int guard_;
};

void enforce_size_guard(const Graph& g, const ExactCheckOptions& opts);

struct SubsetPair {
  std::vector<NodeId> first;
  std::vector<NodeId> second;
};

struct RobustnessResult {
  bool holds = true;
  std::optional<SubsetPair> witness;  // set iff !holds

  explicit operator bool() const { return holds; }
};

// Some vertex of S has at least r in-neighbors outside S. Throws on empty S.
bool is_r_reachable(const Graph& g, std::span<const NodeId> set, int r);

// At most r members of S are in-neighbors of any vertex outside S.
bool is_r_local(const Graph& g, std::span<const NodeId> set, int r);

RobustnessResult is_r_robust(const Graph& g, int r,
                             const ExactCheckOptions& opts = {});

// Condition 1/2 of the (r,s) definition count in-neighbors outside the set.
RobustnessResult is_rs_robust(const Graph& g, int r, int s,
                              const ExactCheckOptions& opts = {});

// Largest r with is_r_robust(g, r); 0 when the graph is not even 1-robust.
// Graphs with fewer than two nodes have no subset pairs and report 0.
int max_robustness(const Graph& g, const ExactCheckOptions& opts = {});

// True when (first, second) is a pair of disjoint nonempty sets for which
// the (r,s) condition fails. With s == 1 this is the r-robust violation.
bool violates_rs(const Graph& g, const SubsetPair& pair, int r, int s);

}  // namespace resopt
