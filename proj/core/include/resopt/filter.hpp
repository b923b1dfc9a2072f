#pragma once

#include <span>
#include <vector>

#include "resopt/graph.hpp"

namespace resopt {

struct Incoming {
  NodeId sender;
  double value;
};

struct FilterResult {
  std::vector<NodeId> retained;       // ascending sender id
  std::vector<NodeId> removed_above;  // most extreme first
  std::vector<NodeId> removed_below;  // most extreme first
};

// Local filtering: drop up to F values strictly above own_value (largest
// first) and up to F strictly below (smallest first). Values equal to
// own_value are always kept. Among equal extreme values the smaller sender id
// is removed first.
FilterResult lf_filter(double own_value, std::span<const Incoming> incoming,
                       int f);

}  // namespace resopt
