#include "resopt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "resopt/filter.hpp"

namespace resopt {

Eigen::MatrixXd metropolis_weights(const Graph& g) {
  if (!g.is_symmetric()) {
    throw std::invalid_argument("metropolis weights need an undirected graph");
  }
  const int n = g.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(v, u) = 1.0 / (1.0 + std::max(g.in_degree(u), g.in_degree(v)));
  }
  for (int i = 0; i < n; ++i) a(i, i) = 1.0 - (a.row(i).sum() - a(i, i));
  return a;
}

double min_positive_entry(const Eigen::MatrixXd& m) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    if (v > 0.0) best = std::min(best, v);
  }
  return best;
}

WeightScheme::WeightScheme(Kind k) : kind_(k) {
  label_ = k == Kind::kMetropolis ? "metropolis" : "equal_neighbor";
}

WeightScheme WeightScheme::custom(CustomFn fn, double eta, std::string label) {
  if (!fn) throw std::invalid_argument("custom weights: empty function");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("custom weights: eta must lie in (0, 1]");
  }
  WeightScheme s(Kind::kCustom);
  s.fn_ = std::move(fn);
  s.eta_ = eta;
  s.label_ = std::move(label);
  return s;
}

// Evaluates a scheme for one run; caches the Metropolis matrix.
class WeightRows {
 public:
  explicit WeightRows(const SimConfig& cfg) : scheme_(cfg.weights) {
    if (scheme_.kind() == WeightScheme::Kind::kMetropolis) {
      metro_ = metropolis_weights(cfg.graph);
    }
  }

  std::vector<double> row(NodeId self, std::span<const NodeId> used,
                          int t) const {
    std::vector<double> w;
    switch (scheme_.kind()) {
      case WeightScheme::Kind::kEqualNeighbor:
        w.assign(used.size() + 1, 1.0 / static_cast<double>(used.size() + 1));
        break;
      case WeightScheme::Kind::kMetropolis: {
        w.push_back(0.0);
        double rest = 1.0;
        for (NodeId j : used) {
          w.push_back(metro_(self, j));
          rest -= metro_(self, j);
        }
        w[0] = rest;
        break;
      }
      case WeightScheme::Kind::kCustom: {
        w = scheme_.fn_(self, used, t);
        if (w.size() != used.size() + 1) {
          throw std::runtime_error("custom weights: wrong row length");
        }
        double sum = 0.0;
        for (double x : w) {
          if (!(x >= 0.0)) throw std::runtime_error("custom weights: w < 0");
          sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
          throw std::runtime_error("custom weights: row does not sum to 1");
        }
        break;
      }
    }
    return w;
  }

  double eta(const SimConfig& cfg) const {
    switch (scheme_.kind()) {
      case WeightScheme::Kind::kEqualNeighbor: {
        int d = 0;
        for (NodeId i : cfg.regular_nodes()) {
          d = std::max(d, cfg.graph.in_degree(i));
        }
        return 1.0 / (d + 1.0);
      }
      case WeightScheme::Kind::kMetropolis:
        return min_positive_entry(metro_);
      case WeightScheme::Kind::kCustom:
        return scheme_.eta_;
    }
    return 0.0;
  }

 private:
  const WeightScheme& scheme_;
  Eigen::MatrixXd metro_;
};

bool SimConfig::is_adversarial(NodeId i) const {
  return !adversaries.empty() && adversaries[i] != nullptr;
}

std::vector<NodeId> SimConfig::regular_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < graph.size(); ++i) {
    if (!is_adversarial(i)) out.push_back(i);
  }
  return out;
}

std::vector<NodeId> SimConfig::adversarial_nodes() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < graph.size(); ++i) {
    if (is_adversarial(i)) out.push_back(i);
  }
  return out;
}

void SimConfig::validate() const {
  const auto n = static_cast<std::size_t>(graph.size());
  if (n == 0) throw std::invalid_argument("config: graph has no nodes");
  if (functions.size() != n) {
    throw std::invalid_argument("config: need one function per node");
  }
  if (initial.size() != n) {
    throw std::invalid_argument("config: need one initial value per node");
  }
  if (!adversaries.empty() && adversaries.size() != n) {
    throw std::invalid_argument("config: adversary table must cover all nodes");
  }
  for (double x : initial) {
    if (!std::isfinite(x)) throw std::invalid_argument("config: non-finite x0");
  }
  if (filter_f < 0) throw std::invalid_argument("config: F must be >= 0");
  if (rounds < 0) throw std::invalid_argument("config: rounds must be >= 0");
  if (weights.kind() == WeightScheme::Kind::kMetropolis &&
      !graph.is_symmetric()) {
    throw std::invalid_argument("config: metropolis weights need an undirected graph");
  }
  if (regular_nodes().empty()) {
    throw std::invalid_argument("config: no regular nodes");
  }
}

double scheme_eta(const SimConfig& cfg) { return WeightRows(cfg).eta(cfg); }

namespace {

double heard(const SimConfig& cfg, std::span<const double> state,
             const MessageTable& messages, NodeId from, NodeId to) {
  if (cfg.is_adversarial(from) && static_cast<std::size_t>(from) < messages.size() &&
      !messages[from].empty()) {
    const auto outs = cfg.graph.out_neighbors(from);
    const auto it = std::lower_bound(outs.begin(), outs.end(), to);
    return messages[from][static_cast<std::size_t>(it - outs.begin())];
  }
  return state[from];
}

StepOutput update_regular(const SimConfig& cfg, const WeightRows& rows, int t,
                          std::span<const double> state,
                          const MessageTable& messages, bool filter) {
  const double alpha = cfg.schedule.alpha(t);
  StepOutput out;
  out.next.assign(state.begin(), state.end());
  std::vector<Incoming> incoming;
  for (NodeId i = 0; i < cfg.graph.size(); ++i) {
    if (cfg.is_adversarial(i)) continue;
    incoming.clear();
    for (NodeId j : cfg.graph.in_neighbors(i)) {
      incoming.push_back({j, heard(cfg, state, messages, j, i)});
    }
    NodeRound rec;
    rec.node = i;
    if (filter) {
      auto kept = lf_filter(state[i], incoming, cfg.filter_f);
      rec.retained = std::move(kept.retained);
      rec.removed_above = std::move(kept.removed_above);
      rec.removed_below = std::move(kept.removed_below);
    } else {
      for (const Incoming& in : incoming) rec.retained.push_back(in.sender);
    }
    rec.weights = rows.row(i, rec.retained, t);

    double c = rec.weights[0] * state[i];
    for (std::size_t k = 0; k < rec.retained.size(); ++k) {
      const NodeId j = rec.retained[k];
      const auto pos = std::find_if(incoming.begin(), incoming.end(),
                                    [j](const Incoming& in) { return in.sender == j; });
      c += rec.weights[k + 1] * pos->value;
    }
    rec.consensus = c;
    rec.gradient = cfg.functions[i].subgradient(c);
    out.next[i] = c - alpha * rec.gradient;
    out.updates.push_back(std::move(rec));
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t node) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (node + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StepOutput baseline_step(const SimConfig& cfg, int t,
                         std::span<const double> state,
                         const MessageTable& messages) {
  return update_regular(cfg, WeightRows(cfg), t, state, messages, false);
}

StepOutput lf_step(const SimConfig& cfg, int t, std::span<const double> state,
                   const MessageTable& messages) {
  return update_regular(cfg, WeightRows(cfg), t, state, messages, true);
}

Trace run(const SimConfig& cfg) {
  cfg.validate();
  const int n = cfg.graph.size();
  const WeightRows rows(cfg);

  Trace trace;
  trace.filter_f = cfg.filter_f;
  trace.adversarial.assign(n, 0);
  for (NodeId i = 0; i < n; ++i) trace.adversarial[i] = cfg.is_adversarial(i);
  for (NodeId i : cfg.regular_nodes()) {
    trace.lipschitz = std::max(trace.lipschitz, cfg.functions[i].lipschitz());
  }
  trace.eta = rows.eta(cfg);
  const auto deltas = cfg.schedule.deltas(cfg.rounds, trace.lipschitz);

  std::vector<std::unique_ptr<AdversaryAgent>> agents(n);
  for (NodeId a : cfg.adversarial_nodes()) {
    agents[a] = cfg.adversaries[a]->spawn({a, cfg.initial[a], mix_seed(cfg.seed, a)});
  }

  std::vector<double> state = cfg.initial;
  trace.states.reserve(cfg.rounds + 1);
  trace.rounds.reserve(cfg.rounds);
  MessageTable messages(n);

  auto view_at = [&](int t, NodeId self) {
    RoundView v;
    v.round = t;
    v.self = self;
    v.graph = &cfg.graph;
    v.state = state;
    v.adversarial = trace.adversarial;
    v.functions = cfg.functions;
    v.alpha = cfg.schedule.alpha(t);
    v.filter_f = cfg.filter_f;
    return v;
  };

  for (int t = 0; t < cfg.rounds; ++t) {
    std::vector<double> nominal(n, 0.0);
    for (NodeId a : cfg.adversarial_nodes()) {
      AdversaryMessage msg = agents[a]->act(view_at(t, a));
      if (!msg.per_edge.empty() &&
          msg.per_edge.size() != cfg.graph.out_neighbors(a).size()) {
        throw std::logic_error("adversary sent wrong number of edge messages");
      }
      if (cfg.adversaries[a]->broadcast() && !msg.per_edge.empty() &&
          std::any_of(msg.per_edge.begin(), msg.per_edge.end(),
                      [&](double v) { return v != msg.per_edge.front(); })) {
        throw std::logic_error("malicious adversary sent differing messages");
      }
      nominal[a] = msg.nominal;
      messages[a] = std::move(msg.per_edge);
    }
    for (NodeId a : cfg.adversarial_nodes()) state[a] = nominal[a];
    trace.states.push_back(state);

    StepOutput step = update_regular(cfg, rows, t, state, messages,
                                     cfg.dynamics == Dynamics::kLocalFiltering);
    for (NodeId a : cfg.adversarial_nodes()) agents[a]->observe(view_at(t, a));

    RoundRecord rec;
    rec.alpha = cfg.schedule.alpha(t);
    rec.delta = deltas[t];
    for (const NodeRound& u : step.updates) {
      for (double w : u.weights) {
        trace.min_weight_used = std::min(trace.min_weight_used, w);
      }
    }
    if (cfg.record_details) {
      rec.updates = std::move(step.updates);
      if (std::any_of(messages.begin(), messages.end(),
                      [](const auto& m) { return !m.empty(); })) {
        rec.messages = messages;
      }
    } else {
      rec.updates.reserve(step.updates.size());
      for (const NodeRound& u : step.updates) {
        NodeRound slim;
        slim.node = u.node;
        slim.consensus = u.consensus;
        slim.gradient = u.gradient;
        rec.updates.push_back(std::move(slim));
      }
    }
    trace.rounds.push_back(std::move(rec));
    state = std::move(step.next);
  }
  trace.states.push_back(state);
  return trace;
}

}  // namespace resopt
