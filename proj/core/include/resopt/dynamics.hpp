#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resopt/adversary.hpp"
#include "resopt/graph.hpp"
#include "resopt/objectives.hpp"
#include "resopt/schedule.hpp"
#include "resopt/trace.hpp"

namespace resopt {

// Doubly stochastic weights for an undirected graph: a_ij = 1/(1+max(d_i,d_j))
// on edges, the diagonal takes the remainder. Throws on directed input.
Eigen::MatrixXd metropolis_weights(const Graph& g);

double min_positive_entry(const Eigen::MatrixXd& m);

// Consensus weights over {self} U used in-neighbors.
class WeightScheme {
 public:
  enum class Kind { kEqualNeighbor, kMetropolis, kCustom };

  // Returns weights for [self, used...]; must be nonnegative and sum to 1.
  using CustomFn = std::function<std::vector<double>(
      NodeId self, std::span<const NodeId> used, int round)>;

  static WeightScheme equal_neighbor() { return WeightScheme(Kind::kEqualNeighbor); }
  // Used in-neighbors get their Metropolis weight; self takes the rest.
  static WeightScheme metropolis() { return WeightScheme(Kind::kMetropolis); }
  static WeightScheme custom(CustomFn fn, double eta, std::string label = "custom");

  WeightScheme() : WeightScheme(Kind::kEqualNeighbor) {}

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

 private:
  explicit WeightScheme(Kind k);

  Kind kind_;
  CustomFn fn_;
  double eta_ = 0.0;
  std::string label_;

  friend class WeightRows;
};

enum class Dynamics { kBaseline, kLocalFiltering };

struct SimConfig {
  Graph graph;
  std::vector<ConvexFunction> functions;  // one per node
  std::vector<BehaviorPtr> adversaries;   // null = regular; empty = none
  std::vector<double> initial;            // x(0)
  int filter_f = 0;
  Dynamics dynamics = Dynamics::kLocalFiltering;
  WeightScheme weights;
  StepSchedule schedule;
  int rounds = 0;
  std::uint64_t seed = 0;
  bool record_details = true;  // filter sets and weight rows per round

  bool is_adversarial(NodeId i) const;
  std::vector<NodeId> regular_nodes() const;
  std::vector<NodeId> adversarial_nodes() const;
  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

// Per adversarial node: values sent on each out-edge (aligned with
// out_neighbors). Empty entries mean "broadcast the state value".
using MessageTable = std::vector<std::vector<double>>;

struct StepOutput {
  std::vector<double> next;  // regular entries updated, others copied
  std::vector<NodeRound> updates;
};

// x_i(t+1) = sum_j a_ij x_j(t) - alpha_t d_i(t), with d_i taken at the
// weighted average and all in-neighbors used.
StepOutput baseline_step(const SimConfig& cfg, int t,
                         std::span<const double> state,
                         const MessageTable& messages = {});

// Same update after filtering up to F values above and below own value.
StepOutput lf_step(const SimConfig& cfg, int t, std::span<const double> state,
                   const MessageTable& messages = {});

// Deterministic given cfg (including seed).
Trace run(const SimConfig& cfg);

// Weight lower bound the configured scheme guarantees for regular nodes.
double scheme_eta(const SimConfig& cfg);

}  // namespace resopt
