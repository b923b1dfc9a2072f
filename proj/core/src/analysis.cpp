#include "resopt/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "resopt/adversary.hpp"

namespace resopt {

int tail_start(const Trace& trace, double fraction) {
  const int size = static_cast<int>(trace.states.size());
  if (size == 0) throw std::invalid_argument("tail window of an empty trace");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("tail fraction must lie in (0, 1]");
  }
  const int len = std::max(1, static_cast<int>(std::ceil(fraction * size)));
  return size - std::min(len, size);
}

ConsensusReport consensus_report(const Trace& trace, double tol,
                                 double tail_fraction) {
  ConsensusReport rep;
  const auto regular = trace.regular_nodes();
  if (regular.empty()) throw std::invalid_argument("trace has no regular nodes");
  for (const auto& row : trace.states) {
    double hi = -INFINITY;
    double lo = INFINITY;
    for (NodeId i : regular) {
      hi = std::max(hi, row[i]);
      lo = std::min(lo, row[i]);
    }
    rep.upper.push_back(hi);
    rep.lower.push_back(lo);
    rep.width.push_back(hi - lo);
  }
  rep.tail_begin = tail_start(trace, tail_fraction);
  rep.tail_width = *std::max_element(rep.width.begin() + rep.tail_begin,
                                     rep.width.end());
  rep.consensus = rep.tail_width <= tol;
  if (rep.consensus) {
    const auto last = trace.regular_states(static_cast<int>(trace.states.size()) - 1);
    rep.value = std::accumulate(last.begin(), last.end(), 0.0) /
                static_cast<double>(last.size());
  }
  return rep;
}

std::vector<int> check_contraction(const Trace& trace, double eta, double tol) {
  const auto rep = consensus_report(trace);
  const int r = static_cast<int>(trace.regular_nodes().size());
  const double factor = 1.0 - 0.5 * std::pow(eta, r);
  std::vector<int> bad;
  for (int t = 0; t + r <= trace.horizon(); ++t) {
    const double bound =
        factor * rep.width[t] + 2.0 * r * trace.rounds[t].delta + tol;
    if (rep.width[t + r] > bound) bad.push_back(t);
  }
  return bad;
}

SafetyReport check_safety(const Trace& trace, const MinimizerHull& hull,
                          double eps, double tail_fraction) {
  SafetyReport rep;
  rep.tail_begin = tail_start(trace, tail_fraction);
  const auto regular = trace.regular_nodes();
  for (std::size_t t = rep.tail_begin; t < trace.states.size(); ++t) {
    for (NodeId i : regular) {
      const double x = trace.states[t][i];
      rep.max_excursion =
          std::max({rep.max_excursion, hull.lo - x, x - hull.hi});
    }
  }
  rep.safe = rep.max_excursion <= eps;
  return rep;
}

namespace {

class LocalSetSearch {
 public:
  LocalSetSearch(const Graph& g, int r, std::int64_t budget)
      : g_(g), r_(r), budget_(budget), n_(g.size()) {
    for (NodeId v = 0; v < n_; ++v) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(), [&](NodeId a, NodeId b) {
      return g.in_degree(a) + g.out_degree(a) > g.in_degree(b) + g.out_degree(b);
    });
  }

  LocalSetResult solve() {
    const NodeMask all = n_ == 64 ? ~NodeMask{0} : (NodeMask{1} << n_) - 1;
    search(0, 0, all);
    LocalSetResult res;
    res.set = mask_to_nodes(best_);
    res.exhaustive = !aborted_;
    res.explored = explored_;
    res.certified = is_r_local(g_, res.set, r_);
    return res;
  }

 private:
  int fed(NodeId v, NodeMask set) const {
    return std::popcount(g_.in_mask(v) & set);
  }

  // A set is r-local iff every vertex outside it is fed by at most r members.
  bool feasible(NodeMask incl, NodeMask outside) const {
    for (NodeId v : mask_to_nodes(outside)) {
      if (fed(v, incl) > r_) return false;
    }
    return true;
  }

  void search(NodeMask incl, NodeMask excl, NodeMask und) {
    if (aborted_) return;
    if (++explored_ > budget_) {
      aborted_ = true;
      return;
    }
    const int have = std::popcount(incl);
    if (have > best_size_ && (excl | und) != 0 && feasible(incl, und)) {
      best_ = incl;
      best_size_ = have;
    }
    if (und == 0) return;

    int slack_loss = 0;
    for (NodeId v : mask_to_nodes(excl)) {
      const int room = r_ - fed(v, incl);
      slack_loss = std::max(slack_loss, std::popcount(g_.in_mask(v) & und) - room);
    }
    int ub = have + std::popcount(und) - slack_loss;
    if (excl == 0) ub = std::min(ub, n_ - 1);
    if (ub <= best_size_) return;

    NodeId pick = -1;
    for (NodeId v : order_) {
      if (und >> v & 1) {
        pick = v;
        break;
      }
    }
    const NodeMask bit = NodeMask{1} << pick;
    const NodeMask rest = und & ~bit;

    bool can_include = true;
    for (NodeId v : mask_to_nodes(excl)) {
      if (fed(v, incl | bit) > r_) {
        can_include = false;
        break;
      }
    }
    if (can_include) search(incl | bit, excl, rest);
    if (fed(pick, incl) <= r_) search(incl, excl | bit, rest);
  }

  const Graph& g_;
  int r_;
  std::int64_t budget_;
  int n_;
  std::vector<NodeId> order_;
  NodeMask best_ = 0;
  int best_size_ = 0;
  std::int64_t explored_ = 0;
  bool aborted_ = false;
};

}  // namespace

LocalSetResult max_r_local_set(const Graph& g, int r, std::int64_t budget) {
  if (g.size() > kMaxMaskNodes) {
    throw std::invalid_argument("max_r_local_set: graph too large");
  }
  if (r < 0) throw std::invalid_argument("max_r_local_set: r must be >= 0");
  return LocalSetSearch(g, r, budget).solve();
}

PerformanceBound performance_bound(int local_set, int n, double a, double b) {
  if (n <= 0 || local_set < 0 || local_set > n) {
    throw std::invalid_argument("performance_bound: bad sizes");
  }
  PerformanceBound pb;
  pb.local_set = local_set;
  pb.n = n;
  const double frac = static_cast<double>(local_set) / n;
  pb.x_error = frac * std::abs(b - a);
  pb.f_gap = frac * frac * (b - a) * (b - a);
  pb.x_star = a + frac * (b - a);
  return pb;
}

PerformanceBound performance_bound(const Graph& g, int r, double a, double b,
                                   std::int64_t budget) {
  const auto res = max_r_local_set(g, r, budget);
  if (!res.exhaustive) {
    throw std::runtime_error("performance_bound: local-set search not exhaustive");
  }
  return performance_bound(res.size(), g.size(), a, b);
}

void SetPackingInstance::validate() const {
  if (universe < 0 || universe > kMaxMaskNodes) {
    throw std::invalid_argument("set packing: universe size out of range");
  }
  for (const auto& s : subsets) {
    for (int e : s) {
      if (e < 0 || e >= universe) {
        throw std::invalid_argument("set packing: element out of range");
      }
    }
  }
}

Graph set_packing_to_graph(const SetPackingInstance& inst) {
  inst.validate();
  const int n = inst.universe;
  const int m = static_cast<int>(inst.subsets.size());
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  for (int i = 0; i < m; ++i) {
    for (int e : inst.subsets[i]) edges.emplace_back(n + i, e);
  }
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("u" + std::to_string(a + 1));
  for (int i = 0; i < m; ++i) names.push_back("s" + std::to_string(i + 1));
  return Graph::undirected(n + m, edges, std::move(names));
}

namespace {

int pack(const std::vector<std::uint64_t>& sets, std::size_t from,
         std::uint64_t used) {
  int best = 0;
  for (std::size_t i = from; i < sets.size(); ++i) {
    if ((sets[i] & used) == 0) {
      best = std::max(best, 1 + pack(sets, i + 1, used | sets[i]));
    }
  }
  return best;
}

}  // namespace

int brute_force_set_packing(const SetPackingInstance& inst) {
  inst.validate();
  if (static_cast<int>(inst.subsets.size()) > kMaxPackingSubsets) {
    throw std::invalid_argument("set packing: too many subsets for exact search");
  }
  std::vector<std::uint64_t> sets;
  for (const auto& s : inst.subsets) {
    std::uint64_t m = 0;
    for (int e : s) m |= std::uint64_t{1} << e;
    sets.push_back(m);
  }
  return pack(sets, 0, 0);
}

SimConfig build_necessity_scenario(const Graph& g, const SubsetPair& witness,
                                   int f, double gap, int rounds,
                                   StepSchedule schedule) {
  if (f < 0) throw std::invalid_argument("necessity: F must be >= 0");
  if (!(gap > 0.0)) throw std::invalid_argument("necessity: gap must be > 0");
  if (!violates_rs(g, witness, f + 1, f + 1)) {
    throw std::invalid_argument(
        "necessity: pair does not violate (F+1,F+1)-robustness");
  }
  const int n = g.size();
  std::vector<int> side(n, 0);
  for (NodeId v : witness.first) side[v] = 1;
  for (NodeId v : witness.second) side[v] = 2;

  SimConfig cfg;
  cfg.graph = g;
  cfg.filter_f = f;
  cfg.dynamics = Dynamics::kLocalFiltering;
  cfg.schedule = std::move(schedule);
  cfg.rounds = rounds;
  cfg.adversaries.assign(n, nullptr);
  int adversaries = 0;
  for (NodeId v = 0; v < n; ++v) {
    const double target = side[v] == 1 ? 0.0 : side[v] == 2 ? gap : 0.5 * gap;
    cfg.initial.push_back(target);
    if (side[v] == 0) {
      cfg.functions.push_back(ConvexFunction::flat_band(0.0, gap));
      continue;
    }
    cfg.functions.push_back(ConvexFunction::quadratic(target));
    int outside = 0;
    for (NodeId j : g.in_neighbors(v)) outside += side[j] != side[v];
    if (outside >= f + 1) {
      cfg.adversaries[v] = fixed_value(target);
      ++adversaries;
    }
  }
  if (adversaries > f) {
    throw std::logic_error("necessity: more than F adversaries required");
  }
  return cfg;
}

bool verify_rooted_after_removal(const Graph& g, int r, int trials,
                                 std::uint64_t seed,
                                 const ExactCheckOptions& opts) {
  if (r < 1) throw std::invalid_argument("rooted after removal: r must be >= 1");
  if (!is_r_robust(g, r, opts)) {
    throw std::invalid_argument("rooted after removal: graph is not r-robust");
  }
  for (int k = 0; k < trials; ++k) {
    const auto trial_seed = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k);
    if (!is_rooted(remove_random_in_edges(g, r - 1, trial_seed))) return false;
  }
  return true;
}

}  // namespace resopt
