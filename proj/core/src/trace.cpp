#include "resopt/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace resopt {

std::vector<NodeId> Trace::regular_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < node_count(); ++i) {
    if (!adversarial[i]) out.push_back(i);
  }
  return out;
}

std::vector<double> Trace::regular_states(int t) const {
  std::vector<double> out;
  const auto& row = states.at(t);
  for (NodeId i = 0; i < node_count(); ++i) {
    if (!adversarial[i]) out.push_back(row[i]);
  }
  return out;
}

double Trace::received(const Graph& g, int t, NodeId from, NodeId to) const {
  const auto& msgs = rounds.at(t).messages;
  if (adversarial.at(from) && static_cast<std::size_t>(from) < msgs.size() &&
      !msgs[from].empty()) {
    const auto outs = g.out_neighbors(from);
    const auto it = std::lower_bound(outs.begin(), outs.end(), to);
    if (it == outs.end() || *it != to) {
      throw std::invalid_argument("trace: no such edge");
    }
    return msgs[from][static_cast<std::size_t>(it - outs.begin())];
  }
  return states.at(t)[from];
}

}  // namespace resopt
