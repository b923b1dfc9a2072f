#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "resopt/graph.hpp"
#include "resopt/objectives.hpp"

namespace resopt {

struct AgentSetup {
  NodeId self = 0;
  double initial = 0.0;
  std::uint64_t seed = 0;
};

// What an adversary sees at round t. In act() the adversarial entries of
// `state` still hold their previous-round values; in observe() they hold the
// values broadcast this round.
struct RoundView {
  int round = 0;
  NodeId self = 0;
  const Graph* graph = nullptr;
  std::span<const double> state;
  std::span<const char> adversarial;
  std::span<const ConvexFunction> functions;
  double alpha = 0.0;
  int filter_f = 0;

  double regular_max() const;
  double regular_min() const;
  double regular_mean() const;
};

// per_edge empty: `nominal` goes to every out-neighbor. Otherwise one value
// per out-neighbor, aligned with graph.out_neighbors(self).
struct AdversaryMessage {
  double nominal = 0.0;
  std::vector<double> per_edge;
};

// Per-run mutable state of one adversarial node.
class AdversaryAgent {
 public:
  virtual ~AdversaryAgent() = default;
  virtual AdversaryMessage act(const RoundView& view) = 0;
  virtual void observe(const RoundView& /*view*/) {}
};

// Immutable description of an adversary strategy; spawns a fresh agent per
// run so that repeated runs of one configuration are identical.
class AdversaryBehavior {
 public:
  virtual ~AdversaryBehavior() = default;
  virtual std::string kind() const = 0;
  // Malicious (broadcast) behaviors must send one value on all out-edges.
  virtual bool broadcast() const { return true; }
  virtual std::unique_ptr<AdversaryAgent> spawn(const AgentSetup& s) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

using BehaviorPtr = std::shared_ptr<const AdversaryBehavior>;

// Holds x_bar forever.
BehaviorPtr fixed_value(double value);

// values[t]; after the end the sequence restarts (cycle) or holds its last
// entry.
BehaviorPtr scripted(std::vector<double> values, bool cycle = false);

// Two-mode strategy that keeps regular nodes from settling. In "shadow" mode
// it repeats the anchor node's value; once every regular node is within
// `tolerance` of `low` it switches to "push" mode and broadcasts
// max(regular) + push_offset; once every regular node is within `tolerance`
// of `high` it goes back to shadowing.
struct OscillationParams {
  NodeId anchor = 0;
  double low = 0.0;
  double high = 1.0;
  double tolerance = 0.1;
  double push_offset = 1.0;
};
BehaviorPtr oscillating(OscillationParams params);

// Runs the honest LF update but with the substituted objective.
BehaviorPtr spoofed_function(ConvexFunction pretend);

// Byzantine: edge k receives base + offsets[k % offsets.size()], where base is
// `base` itself or the regular mean plus `base`.
enum class SplitAnchor { kFixed, kRegularMean };
BehaviorPtr byzantine_split(std::vector<double> offsets,
                            SplitAnchor anchor = SplitAnchor::kFixed,
                            double base = 0.0);

// Fresh uniform draw from [lo, hi] every round (seeded per run and node).
BehaviorPtr random_value(double lo, double hi);

}  // namespace resopt
