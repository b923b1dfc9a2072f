#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resopt/dynamics.hpp"
#include "resopt/graph.hpp"
#include "resopt/objectives.hpp"
#include "resopt/robustness.hpp"
#include "resopt/trace.hpp"

namespace resopt {

inline constexpr double kDefaultConsensusTol = 1e-3;
inline constexpr double kDefaultSafetyEps = 1e-2;
inline constexpr double kDefaultTailFraction = 0.1;

// First state index of the tail window covering `fraction` of x(0..T).
int tail_start(const Trace& trace, double fraction);

struct ConsensusReport {
  std::vector<double> upper;  // M(t) over regular nodes
  std::vector<double> lower;  // m(t)
  std::vector<double> width;  // D(t) = M(t) - m(t)
  int tail_begin = 0;
  double tail_width = 0.0;    // max D over the tail window
  bool consensus = false;
  std::optional<double> value;  // mean of final regular states if consensus
};

ConsensusReport consensus_report(const Trace& trace,
                                 double tol = kDefaultConsensusTol,
                                 double tail_fraction = kDefaultTailFraction);

// Rounds t (t + |R| <= T) where
//   D(t+|R|) <= (1 - eta^|R| / 2) D(t) + 2 |R| delta_t + tol
// fails.
std::vector<int> check_contraction(const Trace& trace, double eta,
                                   double tol = 1e-9);

struct SafetyReport {
  bool safe = true;
  double max_excursion = 0.0;  // distance outside the hull, 0 if inside
  int tail_begin = 0;
};

SafetyReport check_safety(const Trace& trace, const MinimizerHull& hull,
                          double eps = kDefaultSafetyEps,
                          double tail_fraction = kDefaultTailFraction);

struct LocalSetResult {
  std::vector<NodeId> set;
  bool exhaustive = false;
  bool certified = false;  // is_r_local(g, set, r) re-checked
  std::int64_t explored = 0;

  int size() const { return static_cast<int>(set.size()); }
};

inline constexpr std::int64_t kDefaultLocalSetBudget = 20'000'000;

// Largest proper subset S of V with at most r members feeding any vertex
// outside S. Branch and bound; when `budget` search nodes are used up the
// best set so far is returned with exhaustive == false.
LocalSetResult max_r_local_set(const Graph& g, int r,
                               std::int64_t budget = kDefaultLocalSetBudget);

struct PerformanceBound {
  int local_set = 0;
  int n = 0;
  double x_error = 0.0;  // |T|/n |b - a|
  double f_gap = 0.0;    // |T|^2/n^2 (b - a)^2
  double x_star = 0.0;   // a + |T| (b - a) / n
};

PerformanceBound performance_bound(int local_set, int n, double a, double b);
// Throws std::runtime_error when the local-set search is not exhaustive.
PerformanceBound performance_bound(const Graph& g, int r, double a, double b,
                                   std::int64_t budget = kDefaultLocalSetBudget);

struct SetPackingInstance {
  int universe = 0;                        // elements 0..universe-1
  std::vector<std::vector<int>> subsets;
  int k = 0;                               // target, informational

  void validate() const;
};

// Nodes 0..universe-1 are u1..un (complete), nodes universe+i are s(i+1),
// joined to the u-nodes of their subset. Undirected.
Graph set_packing_to_graph(const SetPackingInstance& inst);

inline constexpr int kMaxPackingSubsets = 20;
// Exact maximum number of pairwise disjoint subsets; refuses more than
// kMaxPackingSubsets subsets.
int brute_force_set_packing(const SetPackingInstance& inst);

// Scenario in which S1 and S2 can never agree. Requires (s1, s2) to violate
// (F+1, F+1)-robustness. Nodes in S1 start at and minimize at 0, nodes in S2
// at `gap`; the rest carry a flat band over [0, gap] and start at gap/2.
// Members of S1/S2 with at least F+1 in-neighbors outside their own set are
// adversarial and hold their minimizer.
SimConfig build_necessity_scenario(const Graph& g, const SubsetPair& witness,
                                   int f, double gap, int rounds,
                                   StepSchedule schedule = StepSchedule::harmonic());

// Checks that `trials` independent removals of r-1 in-edges per node all
// leave a rooted graph. Throws std::invalid_argument if g is not r-robust.
bool verify_rooted_after_removal(const Graph& g, int r, int trials,
                                 std::uint64_t seed,
                                 const ExactCheckOptions& opts = {});

}  // namespace resopt
