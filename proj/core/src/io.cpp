#include "resopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "resopt/generators.hpp"
#include "resopt/robustness.hpp"

namespace resopt {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(where + ": missing \"" + key + "\"");
  }
  return *it;
}

template <typename T>
T as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

template <typename T>
T need(const json& j, const char* key, const std::string& where) {
  return as<T>(field(j, key, where), where + "." + key);
}

template <typename T>
T opt(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return as<T>(*it, where + "." + key);
}

// Wraps library argument checks so that bad parameter values surface as
// schema errors.
template <typename F>
auto guarded(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

struct FunctionJson {
  json operator()(const fn::Quadratic& q) const {
    return {{"fn", "quadratic"}, {"params", {{"center", q.center}, {"scale", q.scale}}}};
  }
  json operator()(const fn::Abs& a) const {
    return {{"fn", "abs"}, {"params", {{"center", a.center}, {"slope", a.slope}}}};
  }
  json operator()(const fn::FlatBand& b) const {
    return {{"fn", "flatband"},
            {"params", {{"lo", b.lo}, {"hi", b.hi}, {"growth", b.growth}}}};
  }
  json operator()(const fn::Combination& c) const {
    json parts = json::array();
    for (const auto& p : *c.parts) parts.push_back(function_to_json(p));
    return {{"fn", "combination"}, {"params", {{"weights", c.weights}, {"parts", parts}}}};
  }
};

}  // namespace

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) {
    if (!g.directed() && u > v) continue;
    edges.push_back({u, v});
  }
  json out = {{"n", g.size()}, {"directed", g.directed()}, {"edges", edges}};
  if (!g.names().empty()) out["names"] = g.names();
  return out;
}

Graph graph_from_json(const json& j) {
  const std::string where = "graph";
  if (j.is_object() && j.contains("generator")) {
    const auto kind = need<std::string>(j, "generator", where);
    const auto seed = opt<std::uint64_t>(j, "seed", 0, where);
    return guarded(where, [&]() -> Graph {
      if (kind == "fig1") return gen::fig1();
      if (kind == "fig3") return gen::fig3(need<int>(j, "k", where));
      if (kind == "complete") return gen::complete(need<int>(j, "n", where));
      if (kind == "empty") return gen::empty(need<int>(j, "n", where));
      if (kind == "path") return gen::path(need<int>(j, "n", where));
      if (kind == "ring") return gen::ring(need<int>(j, "n", where));
      if (kind == "erdos_renyi") {
        return gen::erdos_renyi(need<int>(j, "n", where), need<double>(j, "p", where), seed);
      }
      if (kind == "grow_r_robust") {
        return gen::grow_r_robust(need<int>(j, "n", where), need<int>(j, "r", where), seed);
      }
      throw SchemaError(where + ": unknown generator \"" + kind + "\"");
    });
  }
  const int n = need<int>(j, "n", where);
  const bool directed = opt<bool>(j, "directed", true, where);
  std::vector<Edge> edges;
  for (const auto& e : need<std::vector<std::vector<int>>>(j, "edges", where)) {
    if (e.size() != 2) throw SchemaError(where + ".edges: expected [u, v] pairs");
    edges.emplace_back(e[0], e[1]);
  }
  auto names = opt<std::vector<std::string>>(j, "names", {}, where);
  if (!names.empty() && static_cast<int>(names.size()) != n) {
    throw SchemaError(where + ".names: need one name per node");
  }
  if (n < 0) throw SchemaError(where + ".n: must be >= 0");
  return guarded(where, [&] {
    return directed ? Graph(n, edges, true, std::move(names))
                    : Graph::undirected(n, edges, std::move(names));
  });
}

json function_to_json(const ConvexFunction& f) {
  json out = std::visit(FunctionJson{}, f.spec());
  if (!std::holds_alternative<fn::Combination>(f.spec())) out["cap"] = f.cap();
  return out;
}

ConvexFunction function_from_json(const json& j) {
  const std::string where = "function";
  const auto kind = need<std::string>(j, "fn", where);
  const json params = j.contains("params") ? j.at("params") : json::object();
  const double cap = opt<double>(j, "cap", kDefaultCap, where);
  const std::string pw = where + ".params";
  return guarded(where, [&] {
    if (kind == "quadratic") {
      return ConvexFunction::quadratic(opt<double>(params, "center", 0.0, pw), cap,
                                       opt<double>(params, "scale", 1.0, pw));
    }
    if (kind == "abs") {
      return ConvexFunction::abs(opt<double>(params, "center", 0.0, pw),
                                 opt<double>(params, "slope", 1.0, pw), cap);
    }
    if (kind == "flatband") {
      return ConvexFunction::flat_band(need<double>(params, "lo", pw),
                                       need<double>(params, "hi", pw),
                                       opt<double>(params, "growth", 1.0, pw), cap);
    }
    if (kind == "combination") {
      std::vector<ConvexFunction> parts;
      for (const auto& p : field(params, "parts", pw)) {
        parts.push_back(function_from_json(p));
      }
      return ConvexFunction::combination(need<std::vector<double>>(params, "weights", pw),
                                         std::move(parts));
    }
    throw SchemaError(where + ": unknown function kind \"" + kind + "\"");
  });
}

BehaviorPtr behavior_from_json(const json& j) {
  const std::string where = "behavior";
  const auto kind = need<std::string>(j, "kind", where);
  return guarded(where, [&]() -> BehaviorPtr {
    if (kind == "fixed") return fixed_value(need<double>(j, "value", where));
    if (kind == "scripted") {
      return scripted(need<std::vector<double>>(j, "values", where),
                      opt<bool>(j, "cycle", false, where));
    }
    if (kind == "oscillating") {
      OscillationParams p;
      p.anchor = need<int>(j, "anchor", where);
      p.low = need<double>(j, "low", where);
      p.high = need<double>(j, "high", where);
      p.tolerance = opt<double>(j, "tolerance", p.tolerance, where);
      p.push_offset = opt<double>(j, "push_offset", p.push_offset, where);
      return oscillating(p);
    }
    if (kind == "spoofed_function") {
      return spoofed_function(function_from_json(field(j, "function", where)));
    }
    if (kind == "byzantine_split") {
      const auto anchor = opt<std::string>(j, "anchor", "fixed", where);
      if (anchor != "fixed" && anchor != "regular_mean") {
        throw SchemaError(where + ".anchor: expected \"fixed\" or \"regular_mean\"");
      }
      return byzantine_split(need<std::vector<double>>(j, "offsets", where),
                             anchor == "fixed" ? SplitAnchor::kFixed
                                               : SplitAnchor::kRegularMean,
                             opt<double>(j, "base", 0.0, where));
    }
    if (kind == "random") {
      return random_value(need<double>(j, "lo", where), need<double>(j, "hi", where));
    }
    throw SchemaError(where + ": unknown behavior kind \"" + kind + "\"");
  });
}

json schedule_to_json(const StepSchedule& s) {
  switch (s.kind()) {
    case StepSchedule::Kind::kHarmonic:
      return {{"kind", "harmonic"}, {"scale", s.scale()}, {"start", s.start()}};
    case StepSchedule::Kind::kConstant:
      return {{"kind", "constant"}, {"value", s.scale()}};
    case StepSchedule::Kind::kCustom:
      return {{"kind", "custom"}, {"table", s.table()}};
  }
  return {};
}

StepSchedule schedule_from_json(const json& j) {
  const std::string where = "schedule";
  const auto kind = need<std::string>(j, "kind", where);
  return guarded(where, [&] {
    if (kind == "harmonic") {
      return StepSchedule::harmonic(opt<double>(j, "scale", 1.0, where),
                                    opt<double>(j, "start", 1.0, where));
    }
    if (kind == "constant") return StepSchedule::constant(need<double>(j, "value", where));
    if (kind == "custom") {
      return StepSchedule::custom(need<std::vector<double>>(j, "table", where));
    }
    throw SchemaError(where + ": unknown schedule kind \"" + kind + "\"");
  });
}

std::string RobustnessRequest::key() const {
  if (s == 1) return "r" + std::to_string(r);
  return "rs" + std::to_string(r) + std::to_string(s);
}

namespace {

ScenarioChecks checks_from_json(const json& j) {
  const std::string where = "checks";
  ScenarioChecks c;
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string w = where + "." + key;
    if (key == "consensus") {
      ScenarioChecks::Consensus x;
      x.tol = opt<double>(value, "tol", x.tol, w);
      x.tail = opt<double>(value, "tail", x.tail, w);
      c.consensus = x;
    } else if (key == "safety") {
      ScenarioChecks::Safety x;
      x.eps = opt<double>(value, "eps", x.eps, w);
      x.tail = opt<double>(value, "tail", x.tail, w);
      c.safety = x;
    } else if (key == "contraction") {
      ScenarioChecks::Contraction x;
      x.tol = opt<double>(value, "tol", x.tol, w);
      if (value.contains("eta")) x.eta = need<double>(value, "eta", w);
      c.contraction = x;
    } else if (key == "converge") {
      ScenarioChecks::Converge x;
      x.value = need<double>(value, "value", w);
      x.tol = opt<double>(value, "tol", x.tol, w);
      x.tail = opt<double>(value, "tail", x.tail, w);
      c.converge = x;
    } else if (key == "robustness") {
      if (!value.is_array()) throw SchemaError(w + ": expected an array");
      for (const auto& item : value) {
        RobustnessRequest req;
        req.r = need<int>(item, "r", w);
        req.s = opt<int>(item, "s", 1, w);
        if (req.r < 0 || req.s < 1) throw SchemaError(w + ": need r >= 0, s >= 1");
        if (item.contains("expect")) req.expect = need<bool>(item, "expect", w);
        c.robustness.push_back(req);
      }
    } else {
      throw SchemaError(where + ": unknown check \"" + key + "\"");
    }
  }
  return c;
}

}  // namespace

Scenario scenario_from_json(const json& j,
                            const std::filesystem::path& base_dir) {
  const std::string where = "scenario";
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  Scenario sc;
  sc.name = opt<std::string>(j, "name", "scenario", where);
  SimConfig& cfg = sc.config;

  const json& gj = field(j, "graph", where);
  if (gj.is_string()) {
    cfg.graph = graph_from_json(read_json_file(base_dir / gj.get<std::string>()));
  } else {
    cfg.graph = graph_from_json(gj);
  }
  const int n = cfg.graph.size();
  if (n == 0) throw SchemaError(where + ".graph: no nodes");

  const json& fj = field(j, "functions", where);
  if (fj.is_array()) {
    if (static_cast<int>(fj.size()) != n) {
      throw SchemaError(where + ".functions: need one entry per node");
    }
    for (const auto& f : fj) cfg.functions.push_back(function_from_json(f));
  } else {
    cfg.functions.assign(n, function_from_json(fj));
  }

  cfg.adversaries.assign(n, nullptr);
  if (j.contains("adversaries")) {
    const json& aj = j.at("adversaries");
    if (!aj.is_array()) throw SchemaError(where + ".adversaries: expected an array");
    for (const auto& a : aj) {
      const int node = need<int>(a, "node", where + ".adversaries");
      if (node < 0 || node >= n) {
        throw SchemaError(where + ".adversaries: node " + std::to_string(node) +
                          " does not exist");
      }
      if (cfg.adversaries[node]) {
        throw SchemaError(where + ".adversaries: node " + std::to_string(node) +
                          " listed twice");
      }
      cfg.adversaries[node] = behavior_from_json(field(a, "behavior", where + ".adversaries"));
    }
  }

  const json& ij = field(j, "initial", where);
  if (ij.is_array()) {
    cfg.initial = as<std::vector<double>>(ij, where + ".initial");
  } else {
    cfg.initial.assign(n, as<double>(ij, where + ".initial"));
  }

  cfg.filter_f = opt<int>(j, "F", 0, where);
  const auto dyn = opt<std::string>(j, "dynamics", "lf", where);
  if (dyn == "lf") {
    cfg.dynamics = Dynamics::kLocalFiltering;
  } else if (dyn == "baseline") {
    cfg.dynamics = Dynamics::kBaseline;
  } else {
    throw SchemaError(where + ".dynamics: expected \"lf\" or \"baseline\"");
  }
  const auto weights = opt<std::string>(j, "weights", "equal_neighbor", where);
  if (weights == "equal_neighbor") {
    cfg.weights = WeightScheme::equal_neighbor();
  } else if (weights == "metropolis") {
    cfg.weights = WeightScheme::metropolis();
  } else {
    throw SchemaError(where + ".weights: expected \"equal_neighbor\" or \"metropolis\"");
  }
  if (j.contains("schedule")) cfg.schedule = schedule_from_json(j.at("schedule"));
  cfg.rounds = need<int>(j, "rounds", where);
  cfg.seed = opt<std::uint64_t>(j, "seed", 0, where);
  cfg.record_details = opt<bool>(j, "record_details", true, where);
  if (j.contains("checks")) sc.checks = checks_from_json(j.at("checks"));

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path), path.parent_path());
}

json trace_to_json(const Trace& trace) {
  json rounds = json::array();
  for (const RoundRecord& r : trace.rounds) {
    json updates = json::array();
    for (const NodeRound& u : r.updates) {
      updates.push_back({{"node", u.node},
                         {"retained", u.retained},
                         {"removed_above", u.removed_above},
                         {"removed_below", u.removed_below},
                         {"weights", u.weights},
                         {"consensus", u.consensus},
                         {"gradient", u.gradient}});
    }
    json rec = {{"alpha", r.alpha}, {"delta", r.delta}, {"updates", updates}};
    if (!r.messages.empty()) rec["messages"] = r.messages;
    rounds.push_back(std::move(rec));
  }
  std::vector<bool> adversarial(trace.adversarial.begin(), trace.adversarial.end());
  return {{"filter_f", trace.filter_f},
          {"lipschitz", trace.lipschitz},
          {"eta", trace.eta},
          {"min_weight_used", trace.min_weight_used},
          {"adversarial", adversarial},
          {"states", trace.states},
          {"rounds", rounds}};
}

Trace trace_from_json(const json& j) {
  const std::string where = "trace";
  Trace t;
  t.filter_f = need<int>(j, "filter_f", where);
  t.lipschitz = need<double>(j, "lipschitz", where);
  t.eta = need<double>(j, "eta", where);
  t.min_weight_used = need<double>(j, "min_weight_used", where);
  for (bool b : need<std::vector<bool>>(j, "adversarial", where)) {
    t.adversarial.push_back(b ? 1 : 0);
  }
  t.states = need<std::vector<std::vector<double>>>(j, "states", where);
  for (const auto& rj : field(j, "rounds", where)) {
    RoundRecord r;
    r.alpha = need<double>(rj, "alpha", where + ".rounds");
    r.delta = need<double>(rj, "delta", where + ".rounds");
    for (const auto& uj : field(rj, "updates", where + ".rounds")) {
      const std::string w = where + ".updates";
      NodeRound u;
      u.node = need<int>(uj, "node", w);
      u.retained = opt<std::vector<NodeId>>(uj, "retained", {}, w);
      u.removed_above = opt<std::vector<NodeId>>(uj, "removed_above", {}, w);
      u.removed_below = opt<std::vector<NodeId>>(uj, "removed_below", {}, w);
      u.weights = opt<std::vector<double>>(uj, "weights", {}, w);
      u.consensus = need<double>(uj, "consensus", w);
      u.gradient = need<double>(uj, "gradient", w);
      r.updates.push_back(std::move(u));
    }
    r.messages = opt<std::vector<std::vector<double>>>(rj, "messages", {}, where);
    t.rounds.push_back(std::move(r));
  }
  const auto n = t.adversarial.size();
  if (t.states.size() != t.rounds.size() + 1) {
    throw SchemaError(where + ": need one more state row than rounds");
  }
  for (const auto& row : t.states) {
    if (row.size() != n) throw SchemaError(where + ": state row has wrong length");
  }
  return t;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "round,node,state,gradient,alpha\n";
  out << std::setprecision(17);
  const int horizon = trace.horizon();
  for (int t = 0; t <= horizon; ++t) {
    const RoundRecord* rec = t < horizon ? &trace.rounds[t] : nullptr;
    std::size_t k = 0;
    for (NodeId i = 0; i < trace.node_count(); ++i) {
      out << t << ',' << i << ',' << trace.states[t][i] << ',';
      if (rec != nullptr && !trace.adversarial[i]) {
        while (k < rec->updates.size() && rec->updates[k].node < i) ++k;
        if (k < rec->updates.size() && rec->updates[k].node == i) {
          out << rec->updates[k].gradient;
        }
        out << ',' << rec->alpha;
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
}

json build_report(const Scenario& scenario, const Trace& trace) {
  const SimConfig& cfg = scenario.config;
  const ScenarioChecks& checks = scenario.checks;
  json report;
  report["scenario"] = scenario.name;
  report["nodes"] = trace.node_count();
  report["rounds"] = trace.horizon();
  report["adversarial"] = cfg.adversarial_nodes();
  report["eta"] = trace.eta;
  report["min_weight_used"] = trace.min_weight_used;
  report["final_regular_states"] =
      trace.regular_states(static_cast<int>(trace.states.size()) - 1);
  bool passed = true;
  json results = json::object();

  const auto regular = cfg.regular_nodes();
  std::vector<ConvexFunction> regular_fns;
  for (NodeId i : regular) regular_fns.push_back(cfg.functions[i]);
  const MinimizerHull hull = minimizer_hull(regular_fns);
  report["minimizer_hull"] = {hull.lo, hull.hi};

  if (checks.consensus) {
    const auto rep = consensus_report(trace, checks.consensus->tol, checks.consensus->tail);
    json c = {{"passed", rep.consensus},
              {"tol", checks.consensus->tol},
              {"tail_width", rep.tail_width},
              {"final_width", rep.width.back()}};
    if (rep.value) c["value"] = *rep.value;
    results["consensus"] = c;
    passed = passed && rep.consensus;
  }
  if (checks.converge) {
    const auto& cv = *checks.converge;
    double worst = 0.0;
    for (std::size_t t = tail_start(trace, cv.tail); t < trace.states.size(); ++t) {
      for (NodeId i : regular) {
        worst = std::max(worst, std::abs(trace.states[t][i] - cv.value));
      }
    }
    const bool ok = worst <= cv.tol;
    results["converge"] = {{"passed", ok}, {"value", cv.value}, {"tol", cv.tol},
                           {"max_distance", worst}};
    passed = passed && ok;
  }
  if (checks.safety) {
    const auto rep = check_safety(trace, hull, checks.safety->eps, checks.safety->tail);
    results["safety"] = {{"passed", rep.safe},
                         {"eps", checks.safety->eps},
                         {"max_excursion", rep.max_excursion}};
    passed = passed && rep.safe;
  }
  if (checks.contraction) {
    const double eta = checks.contraction->eta.value_or(trace.eta);
    const auto bad = check_contraction(trace, eta, checks.contraction->tol);
    json c = {{"passed", bad.empty()}, {"eta", eta}, {"violations", bad.size()}};
    if (!bad.empty()) c["first_violation"] = bad.front();
    results["contraction"] = c;
    passed = passed && bad.empty();
  }
  if (!checks.robustness.empty()) {
    json table = json::object();
    json witnesses = json::object();
    bool ok = true;
    for (const auto& req : checks.robustness) {
      const auto res = req.s == 1 ? is_r_robust(cfg.graph, req.r)
                                  : is_rs_robust(cfg.graph, req.r, req.s);
      table[req.key()] = res.holds;
      if (res.witness) {
        witnesses[req.key()] = {res.witness->first, res.witness->second};
      }
      if (req.expect && *req.expect != res.holds) ok = false;
    }
    report["robustness"] = table;
    if (!witnesses.empty()) report["robustness_witnesses"] = witnesses;
    results["robustness"] = {{"passed", ok}};
    passed = passed && ok;
  }
  report["checks"] = results;
  report["passed"] = passed;
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

}  // namespace

std::string render_svg(const Trace& trace, const std::string& title) {
  constexpr double kWidth = 800, kPanel = 260, kLeft = 70, kRight = 20, kTop = 40,
                   kGap = 50;
  constexpr int kMaxPoints = 1000;
  const int rows = static_cast<int>(trace.states.size());
  const int stride = std::max(1, rows / kMaxPoints);
  std::vector<int> ts;
  for (int t = 0; t < rows; t += stride) ts.push_back(t);
  if (ts.back() != rows - 1) ts.push_back(rows - 1);

  const auto regular = trace.regular_nodes();
  const auto rep = consensus_report(trace);
  double lo = INFINITY, hi = -INFINITY, dmax = 0.0;
  for (int t : ts) {
    lo = std::min(lo, rep.lower[t]);
    hi = std::max(hi, rep.upper[t]);
    dmax = std::max(dmax, rep.width[t]);
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  if (dmax < 1e-12) dmax = 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double last = std::max(1, rows - 1);
  auto px = [&](int t) { return kLeft + plot_w * t / last; };

  std::ostringstream svg;
  const double height = kTop + 2 * kPanel + kGap + 40;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"16\">" << escape(title)
      << "</text>\n";

  auto panel = [&](double top, double vlo, double vhi, const std::string& label) {
    svg << "<rect x=\"" << kLeft << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << kPanel << "\" fill=\"none\" stroke=\"#444\"/>\n";
    svg << "<text x=\"8\" y=\"" << top + 12 << "\">" << fmt_label(vhi) << "</text>\n";
    svg << "<text x=\"8\" y=\"" << top + kPanel << "\">" << fmt_label(vlo) << "</text>\n";
    svg << "<text x=\"" << kLeft + 6 << "\" y=\"" << top + 16 << "\">" << label
        << "</text>\n";
  };
  auto polyline = [&](double top, double vlo, double vhi, const char* color,
                      auto&& value) {
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (int t : ts) {
      const double v = std::clamp(value(t), vlo, vhi);
      svg << fmt(px(t)) << ',' << fmt(top + kPanel * (vhi - v) / (vhi - vlo)) << ' ';
    }
    svg << "\"/>\n";
  };

  panel(kTop, lo, hi, "regular states x_i(t)");
  for (std::size_t k = 0; k < regular.size(); ++k) {
    const NodeId i = regular[k];
    polyline(kTop, lo, hi, kPalette[k % std::size(kPalette)],
             [&](int t) { return trace.states[t][i]; });
  }
  const double top2 = kTop + kPanel + kGap;
  panel(top2, 0.0, dmax, "width D(t)");
  polyline(top2, 0.0, dmax, "#000000", [&](int t) { return rep.width[t]; });
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << top2 + kPanel + 30
      << "\" text-anchor=\"middle\">round (0 .. " << rows - 1 << ")</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

SetPackingInstance packing_from_json(const json& j) {
  const std::string where = "instance";
  SetPackingInstance inst;
  inst.universe = need<int>(j, "n", where);
  inst.subsets = need<std::vector<std::vector<int>>>(j, "subsets", where);
  inst.k = opt<int>(j, "k", 0, where);
  guarded(where, [&] {
    inst.validate();
    return 0;
  });
  return inst;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace resopt
