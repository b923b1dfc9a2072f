#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "resopt/graph.hpp"
#include "resopt/trace.hpp"

namespace resopt {

// Weights over regular nodes only that reproduce an LF round in which
// adversarial values were used. Row/column k refers to regular[k].
struct EquivalentWeights {
  Eigen::MatrixXd matrix;
  std::vector<NodeId> regular;
};

// Every retained adversarial value is rewritten as a convex combination of
// two regular values that bracket it. Requires a detailed trace, at most F
// adversarial in-neighbors per regular node and in-degree >= 2F+1 for every
// regular node (std::invalid_argument otherwise). A missing bracket raises
// std::runtime_error.
EquivalentWeights equivalent_weights(const Graph& g, const Trace& trace,
                                     int t);

struct EquivalenceCheck {
  bool stochastic = true;   // rows sum to 1, entries >= 0
  bool diagonal = true;     // a_ii >= eta
  bool spread = true;       // >= |N_i^-| - 2F off-diagonal entries >= eta/2
  bool reconstructs = true; // A x_R(t) - alpha d_R(t) == x_R(t+1)
  double max_residual = 0.0;

  bool ok() const { return stochastic && diagonal && spread && reconstructs; }
};

EquivalenceCheck check_equivalent_weights(const Graph& g, const Trace& trace,
                                          int t, const EquivalentWeights& w,
                                          double tol = 1e-10);

struct LimitVector {
  Eigen::VectorXd q;          // first row of the product
  double disagreement = 0.0;  // max over columns of (max - min) over rows
};

// Phi = A(horizon) * ... * A(s) over mats[s..horizon].
LimitVector limit_vector_estimate(std::span<const Eigen::MatrixXd> mats, int s,
                                  int horizon);

}  // namespace resopt
