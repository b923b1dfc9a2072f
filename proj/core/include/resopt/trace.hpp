#pragma once

#include <vector>

#include "resopt/graph.hpp"

namespace resopt {

// One regular node's update in one round.
struct NodeRound {
  NodeId node = 0;
  std::vector<NodeId> retained;       // J_i(t), ascending
  std::vector<NodeId> removed_above;
  std::vector<NodeId> removed_below;
  std::vector<double> weights;        // [self, retained...] in that order
  double consensus = 0.0;             // weighted average the gradient is taken at
  double gradient = 0.0;              // d_i(t)

  friend bool operator==(const NodeRound&, const NodeRound&) = default;
};

struct RoundRecord {
  double alpha = 0.0;
  double delta = 0.0;
  std::vector<NodeRound> updates;  // regular nodes, ascending id
  // Per node; nonempty only for adversaries that sent per-edge values,
  // aligned with graph.out_neighbors(node).
  std::vector<std::vector<double>> messages;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct Trace {
  std::vector<char> adversarial;              // per node
  std::vector<std::vector<double>> states;    // x(0..T); adversaries: nominal
  std::vector<RoundRecord> rounds;            // t = 0..T-1
  int filter_f = 0;
  double lipschitz = 0.0;   // max subgradient bound over regular functions
  double eta = 0.0;         // lower bound on weights the scheme can emit
  double min_weight_used = 1.0;

  int node_count() const { return static_cast<int>(adversarial.size()); }
  int horizon() const { return static_cast<int>(rounds.size()); }
  std::vector<NodeId> regular_nodes() const;
  std::vector<double> regular_states(int t) const;
  // Value node `to` heard from in-neighbor `from` at round t.
  double received(const Graph& g, int t, NodeId from, NodeId to) const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

}  // namespace resopt
