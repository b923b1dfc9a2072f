#include "resopt/equivalent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace resopt {

namespace {

struct Heard {
  NodeId sender;
  double value;
};

// Order used by the filter: ties above own value put the smaller id last,
// ties at or below own value put the smaller id first.
bool before(const Heard& a, const Heard& b, double own) {
  if (a.value != b.value) return a.value < b.value;
  if (a.value > own) return a.sender > b.sender;
  return a.sender < b.sender;
}

void check_preconditions(const Graph& g, const Trace& trace) {
  const int f = trace.filter_f;
  for (NodeId i : trace.regular_nodes()) {
    int adversarial = 0;
    for (NodeId j : g.in_neighbors(i)) adversarial += trace.adversarial[j];
    if (adversarial > f) {
      throw std::invalid_argument("equivalent weights: adversaries are not " +
                                  std::to_string(f) + "-local at node " +
                                  std::to_string(i));
    }
    if (g.in_degree(i) < 2 * f + 1) {
      throw std::invalid_argument(
          "equivalent weights: node " + std::to_string(i) +
          " has fewer than 2F+1 in-neighbors");
    }
  }
}

}  // namespace

EquivalentWeights equivalent_weights(const Graph& g, const Trace& trace,
                                     int t) {
  if (g.size() != trace.node_count()) {
    throw std::invalid_argument("equivalent weights: graph/trace mismatch");
  }
  if (t < 0 || t >= trace.horizon()) {
    throw std::out_of_range("equivalent weights: round out of range");
  }
  check_preconditions(g, trace);

  EquivalentWeights out;
  out.regular = trace.regular_nodes();
  const auto r = static_cast<Eigen::Index>(out.regular.size());
  std::vector<int> index(g.size(), -1);
  for (Eigen::Index k = 0; k < r; ++k) index[out.regular[k]] = static_cast<int>(k);
  out.matrix = Eigen::MatrixXd::Zero(r, r);

  const int f = trace.filter_f;
  const auto& x = trace.states[t];
  for (const NodeRound& u : trace.rounds[t].updates) {
    if (u.weights.size() != u.retained.size() + 1) {
      throw std::invalid_argument("equivalent weights: trace lacks weight rows");
    }
    const NodeId i = u.node;
    const int row = index[i];
    const double own = x[i];
    out.matrix(row, row) += u.weights[0];

    std::vector<Heard> heard;
    for (NodeId j : g.in_neighbors(i)) {
      heard.push_back({j, trace.received(g, t, j, i)});
    }
    std::sort(heard.begin(), heard.end(),
              [own](const Heard& a, const Heard& b) { return before(a, b, own); });
    const int d = static_cast<int>(heard.size());
    std::vector<int> position(g.size(), -1);
    for (int p = 0; p < d; ++p) position[heard[p].sender] = p;

    // Regular nodes in the lowest / highest F positions, handed out to the
    // adversaries that sit in the middle block.
    std::vector<int> low_pool;
    std::vector<int> high_pool;
    for (int p = 0; p < f; ++p) {
      if (!trace.adversarial[heard[p].sender]) low_pool.push_back(p);
    }
    for (int p = d - 1; p >= d - f; --p) {
      if (!trace.adversarial[heard[p].sender]) high_pool.push_back(p);
    }
    std::size_t next_low = 0;
    std::size_t next_high = 0;

    for (std::size_t k = 0; k < u.retained.size(); ++k) {
      const NodeId j = u.retained[k];
      const double w = u.weights[k + 1];
      if (!trace.adversarial[j]) {
        out.matrix(row, index[j]) += w;
        continue;
      }
      const int p = position[j];
      const double xm = heard[p].value;
      NodeId lo_node = -1;
      NodeId hi_node = -1;
      if (p >= f && p < d - f) {
        if (next_low >= low_pool.size() || next_high >= high_pool.size()) {
          throw std::runtime_error("equivalent weights: no bracket for node " +
                                   std::to_string(j));
        }
        lo_node = heard[low_pool[next_low++]].sender;
        hi_node = heard[high_pool[next_high++]].sender;
      } else {
        // Any regular pair around xm from the node's own neighborhood.
        double best_lo = -INFINITY;
        double best_hi = INFINITY;
        auto consider = [&](NodeId c, double v) {
          if (v <= xm && v > best_lo) { best_lo = v; lo_node = c; }
          if (v >= xm && v < best_hi) { best_hi = v; hi_node = c; }
        };
        consider(i, own);
        for (const Heard& h : heard) {
          if (!trace.adversarial[h.sender]) consider(h.sender, h.value);
        }
        if (lo_node < 0 || hi_node < 0) {
          throw std::runtime_error("equivalent weights: no bracket for node " +
                                   std::to_string(j));
        }
      }
      const double xl = lo_node == i ? own : x[lo_node];
      const double xu = hi_node == i ? own : x[hi_node];
      if (xl > xm || xu < xm) {
        throw std::runtime_error("equivalent weights: bracket does not contain value");
      }
      const double gamma = xu > xl ? (xm - xl) / (xu - xl) : 1.0;
      out.matrix(row, index[hi_node]) += gamma * w;
      out.matrix(row, index[lo_node]) += (1.0 - gamma) * w;
    }
  }
  return out;
}

EquivalenceCheck check_equivalent_weights(const Graph& g, const Trace& trace,
                                          int t, const EquivalentWeights& w,
                                          double tol) {
  EquivalenceCheck c;
  const double eta = trace.eta;
  const auto& a = w.matrix;
  const auto r = a.rows();
  Eigen::VectorXd xr(r);
  Eigen::VectorXd next(r);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    xr[k] = trace.states[t][w.regular[k]];
    next[k] = trace.states[t + 1][w.regular[k]];
  }
  for (const NodeRound& u : trace.rounds[t].updates) {
    const auto it = std::lower_bound(w.regular.begin(), w.regular.end(), u.node);
    grad[it - w.regular.begin()] = u.gradient;
  }

  for (Eigen::Index k = 0; k < r; ++k) {
    if (std::abs(a.row(k).sum() - 1.0) > 1e-12 || a.row(k).minCoeff() < 0.0) {
      c.stochastic = false;
    }
    if (a(k, k) < eta * (1.0 - 1e-12)) c.diagonal = false;
    int strong = 0;
    for (Eigen::Index j = 0; j < r; ++j) {
      if (j != k && a(k, j) >= 0.5 * eta * (1.0 - 1e-12)) ++strong;
    }
    if (strong < g.in_degree(w.regular[k]) - 2 * trace.filter_f) c.spread = false;
  }
  const Eigen::VectorXd predicted = a * xr - trace.rounds[t].alpha * grad;
  c.max_residual = (predicted - next).cwiseAbs().maxCoeff();
  c.reconstructs = c.max_residual <= tol;
  return c;
}

LimitVector limit_vector_estimate(std::span<const Eigen::MatrixXd> mats, int s,
                                  int horizon) {
  if (s < 0 || horizon < s || horizon >= static_cast<int>(mats.size())) {
    throw std::out_of_range("limit vector: bad window");
  }
  Eigen::MatrixXd phi = mats[s];
  for (int k = s + 1; k <= horizon; ++k) phi = mats[k] * phi;
  LimitVector out;
  out.q = phi.row(0).transpose();
  out.disagreement =
      (phi.colwise().maxCoeff() - phi.colwise().minCoeff()).maxCoeff();
  return out;
}

}  // namespace resopt
