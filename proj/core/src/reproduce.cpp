#include "resopt/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "resopt/adversary.hpp"
#include "resopt/generators.hpp"
#include "resopt/robustness.hpp"

namespace resopt::scenarios {

SimConfig baseline(int rounds) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                   {4, 5}, {5, 0}, {0, 3}};
  SimConfig cfg;
  cfg.graph = Graph::undirected(6, edges);
  for (double c : {0.0, 1.0, 2.0, 3.0, 4.0, 9.0}) {
    cfg.functions.push_back(ConvexFunction::quadratic(c));
    cfg.initial.push_back(c);
  }
  cfg.dynamics = Dynamics::kBaseline;
  cfg.weights = WeightScheme::metropolis();
  cfg.schedule = StepSchedule::harmonic(1.0);
  cfg.rounds = rounds;
  cfg.record_details = false;
  return cfg;
}

SimConfig hijack(double value, int rounds) {
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= 5; ++i) {
    const NodeId next = i == 5 ? 1 : i + 1;
    edges.emplace_back(0, i);
    edges.emplace_back(i, next);
    edges.emplace_back(next, i);
  }
  SimConfig cfg;
  cfg.graph = Graph(6, edges, true, {"a", "r1", "r2", "r3", "r4", "r5"});
  cfg.functions.push_back(ConvexFunction::quadratic(value));
  cfg.initial.push_back(value);
  for (int c = 0; c < 5; ++c) {
    cfg.functions.push_back(ConvexFunction::quadratic(c));
    cfg.initial.push_back(c);
  }
  cfg.adversaries.assign(6, nullptr);
  cfg.adversaries[0] = fixed_value(value);
  cfg.dynamics = Dynamics::kBaseline;
  cfg.schedule = StepSchedule::harmonic(1.0);
  cfg.rounds = rounds;
  cfg.record_details = false;
  return cfg;
}

SimConfig fig1(int rounds, NodeId malicious, double malicious_value) {
  SimConfig cfg;
  cfg.graph = gen::fig1();
  cfg.functions.assign(5, ConvexFunction::abs(0.0));
  cfg.initial = {2.0, 0.0, 0.0, 1.0, 1.0};
  cfg.filter_f = 1;
  cfg.dynamics = Dynamics::kLocalFiltering;
  cfg.schedule = StepSchedule::harmonic(1.0);
  cfg.rounds = rounds;
  if (malicious >= 0) {
    cfg.adversaries.assign(5, nullptr);
    cfg.adversaries[malicious] = fixed_value(malicious_value);
  }
  return cfg;
}

SimConfig oscillation(int rounds) {
  SimConfig cfg;
  cfg.graph = gen::complete(5);
  cfg.functions = {ConvexFunction::quadratic(0.0), ConvexFunction::quadratic(0.0),
                   ConvexFunction::quadratic(0.0), ConvexFunction::quadratic(9.0),
                   ConvexFunction::quadratic(0.0)};
  cfg.initial = {0.0, 0.0, 0.0, 9.0, 0.0};
  OscillationParams p;
  p.anchor = 0;
  p.low = 0.0;
  p.high = 2.25;
  p.tolerance = 0.15;
  p.push_offset = 1.0;
  cfg.adversaries.assign(5, nullptr);
  cfg.adversaries[4] = oscillating(p);
  cfg.filter_f = 1;
  cfg.dynamics = Dynamics::kLocalFiltering;
  cfg.schedule = StepSchedule::harmonic(20.0, 81.0);
  cfg.rounds = rounds;
  cfg.record_details = false;
  return cfg;
}

SimConfig fig3_spoof(int k, double b, int rounds) {
  SimConfig cfg;
  cfg.graph = gen::fig3(k);
  const int w = 3 * k;
  cfg.adversaries.assign(4 * k, nullptr);
  for (int v = 0; v < 4 * k; ++v) {
    cfg.functions.push_back(ConvexFunction::quadratic(v < w ? 0.0 : b));
    cfg.initial.push_back(v < w ? v - 0.5 * (w - 1) : b);
    if (v >= w) cfg.adversaries[v] = spoofed_function(ConvexFunction::quadratic(b));
  }
  cfg.filter_f = 1;
  cfg.dynamics = Dynamics::kLocalFiltering;
  cfg.schedule = StepSchedule::harmonic(1.0, 3.0);
  cfg.rounds = rounds;
  cfg.record_details = false;
  return cfg;
}

Graph two_cliques() {
  std::vector<Edge> edges;
  for (NodeId base : {0, 4}) {
    for (NodeId a = 0; a < 4; ++a) {
      for (NodeId b = a + 1; b < 4; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  edges.emplace_back(0, 4);
  edges.emplace_back(1, 5);
  return Graph::undirected(8, edges);
}

}  // namespace resopt::scenarios

namespace resopt::repro {

bool Outcome::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckLine& c) { return c.passed; });
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames = {
      "fig1-filter", "oscillation", "fig3-bound", "necessity", "hijack", "baseline"};
  return kNames;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double max_distance(const std::vector<double>& xs, double target) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(x - target));
  return worst;
}

Outcome fig1_filter() {
  Outcome out{"fig1-filter", {}};
  const Graph g = gen::fig1();
  const bool r2 = is_r_robust(g, 2).holds;
  const bool r3 = is_r_robust(g, 3).holds;
  const bool rs22 = is_rs_robust(g, 2, 2).holds;
  out.checks.push_back({"2-robust", r2, r2 ? "true" : "false"});
  out.checks.push_back({"not 3-robust", !r3, r3 ? "true" : "false"});
  out.checks.push_back({"(2,2)-robust", rs22, rs22 ? "true" : "false"});

  const Trace trace = run(scenarios::fig1(1));
  std::vector<Edge> used;
  for (const NodeRound& u : trace.rounds[0].updates) {
    for (NodeId j : u.retained) used.emplace_back(j, u.node);
  }
  std::sort(used.begin(), used.end());
  // n3->n1, n4->n1, n5->n1, n3->n2, n4->n2, n2->n3, n5->n3 (0-based ids)
  std::vector<Edge> expected = {{2, 0}, {3, 0}, {4, 0}, {2, 1},
                                {3, 1}, {1, 2}, {4, 2}};
  std::sort(expected.begin(), expected.end());
  std::ostringstream arrows;
  for (const auto& [from, to] : used) {
    arrows << g.name(from) << "->" << g.name(to) << ' ';
  }
  out.checks.push_back({"round-0 retained edges", used == expected, arrows.str()});
  const bool rooted = is_rooted(Graph(g.size(), used));
  out.checks.push_back({"filtered graph not rooted", !rooted,
                        rooted ? "rooted" : "no root"});
  return out;
}

Outcome oscillation() {
  Outcome out{"oscillation", {}};
  const SimConfig cfg = scenarios::oscillation();
  const Trace trace = run(cfg);
  const auto rep = consensus_report(trace, 0.2);
  out.checks.push_back({"tail width <= 0.2", rep.tail_width <= 0.2,
                        "max D over tail = " + num(rep.tail_width)});
  double min_range = INFINITY;
  for (NodeId i : trace.regular_nodes()) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t t = rep.tail_begin; t < trace.states.size(); ++t) {
      lo = std::min(lo, trace.states[t][i]);
      hi = std::max(hi, trace.states[t][i]);
    }
    min_range = std::min(min_range, hi - lo);
  }
  out.checks.push_back({"each node's tail range >= 1", min_range >= 1.0,
                        "smallest range = " + num(min_range)});
  std::vector<ConvexFunction> fs;
  for (NodeId i : trace.regular_nodes()) fs.push_back(cfg.functions[i]);
  const auto safety = check_safety(trace, minimizer_hull(fs));
  out.checks.push_back({"stays in hull [0, 9]", safety.safe,
                        "max excursion = " + num(safety.max_excursion)});
  return out;
}

Outcome fig3_bound() {
  Outcome out{"fig3-bound", {}};
  const Graph g = gen::fig3(3);
  const bool r3 = is_r_robust(g, 3).holds;
  const bool r4 = is_r_robust(g, 4).holds;
  out.checks.push_back({"3-robust, not 4-robust", r3 && !r4,
                        std::string(r3 ? "3:yes" : "3:no") + (r4 ? " 4:yes" : " 4:no")});
  const auto local = max_r_local_set(g, 1);
  out.checks.push_back({"max 1-local set = 3",
                        local.exhaustive && local.certified && local.size() == 3,
                        "size " + std::to_string(local.size())});
  const auto pb = performance_bound(local.size(), g.size(), 0.0, 8.0);
  const bool bound_ok = std::abs(pb.x_error - 2.0) < 1e-12 &&
                        std::abs(pb.f_gap - 4.0) < 1e-12 &&
                        std::abs(pb.x_star - 2.0) < 1e-12;
  out.checks.push_back({"bound (2, 4, x*=2)", bound_ok,
                        num(pb.x_error) + ", " + num(pb.f_gap) + ", " + num(pb.x_star)});
  const Trace trace = run(scenarios::fig3_spoof());
  const double dist = max_distance(
      trace.regular_states(static_cast<int>(trace.states.size()) - 1), 0.0);
  out.checks.push_back({"spoofed run converges to 0", dist <= 1e-2,
                        "max |x_i| = " + num(dist)});
  return out;
}

Outcome necessity() {
  Outcome out{"necessity", {}};
  const Graph g = scenarios::two_cliques();
  const auto res = is_rs_robust(g, 2, 2);
  out.checks.push_back({"graph not (2,2)-robust", !res.holds, ""});
  if (res.holds) return out;
  const SimConfig cfg = build_necessity_scenario(g, *res.witness, 1, 10.0, 10'000);
  const Trace trace = run(cfg);
  const auto rep = consensus_report(trace);
  const double dmin = *std::min_element(rep.width.begin(), rep.width.end());
  out.checks.push_back({"D(t) >= 9.9 for all t", dmin >= 9.9, "min D = " + num(dmin)});
  out.checks.push_back({"no consensus", !rep.consensus, ""});
  return out;
}

Outcome hijack() {
  Outcome out{"hijack", {}};
  const Trace trace = run(scenarios::hijack());
  const double dist = max_distance(
      trace.regular_states(static_cast<int>(trace.states.size()) - 1), 7.0);
  out.checks.push_back({"regular states within 1e-3 of 7", dist <= 1e-3,
                        "max distance = " + num(dist)});
  return out;
}

Outcome baseline() {
  Outcome out{"baseline", {}};
  const SimConfig cfg = scenarios::baseline();
  const double target = average_minimizer(cfg.functions);
  const Trace trace = run(cfg);
  const double dist = max_distance(trace.states.back(), target);
  out.checks.push_back({"all nodes within 1e-2 of minimizer", dist <= 1e-2,
                        "x* = " + num(target) + ", max distance = " + num(dist)});
  return out;
}

}  // namespace

Outcome run(const std::string& name) {
  if (name == "fig1-filter") return fig1_filter();
  if (name == "oscillation") return oscillation();
  if (name == "fig3-bound") return fig3_bound();
  if (name == "necessity") return necessity();
  if (name == "hijack") return hijack();
  if (name == "baseline") return baseline();
  throw std::invalid_argument("unknown reproduction \"" + name + "\"");
}

}  // namespace resopt::repro
