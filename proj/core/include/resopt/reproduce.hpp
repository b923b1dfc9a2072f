#pragma once

#include <string>
#include <vector>

#include "resopt/analysis.hpp"
#include "resopt/dynamics.hpp"
#include "resopt/graph.hpp"

namespace resopt::scenarios {

// Ring of six with chord 0-3, Metropolis weights, centers {0,1,2,3,4,9}.
SimConfig baseline(int rounds = 50'000);

// Node 0 feeds every node of an undirected 5-ring and holds `value`.
SimConfig hijack(double value = 7.0, int rounds = 100'000);

// Example network under LF with F = 1, initial values (2, 0, 0, 1, 1) and
// f_i = |x|. `malicious` < 0 keeps every node regular; otherwise that node
// holds `malicious_value`.
SimConfig fig1(int rounds, NodeId malicious = -1, double malicious_value = 5.0);

// K5: three nodes with x^2, one with (x-9)^2, node 4 oscillating.
SimConfig oscillation(int rounds = 100'000);

// fig3(k): W minimizes x^2 (a = 0) and U pretends to minimize (x - b)^2.
SimConfig fig3_spoof(int k = 3, double b = 8.0, int rounds = 20'000);

// Two 4-cliques joined by the edges 0-4 and 1-5; not (2,2)-robust.
Graph two_cliques();

}  // namespace resopt::scenarios

namespace resopt::repro {

struct CheckLine {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct Outcome {
  std::string name;
  std::vector<CheckLine> checks;

  bool passed() const;
};

const std::vector<std::string>& names();

// Throws std::invalid_argument for unknown names.
Outcome run(const std::string& name);

}  // namespace resopt::repro
