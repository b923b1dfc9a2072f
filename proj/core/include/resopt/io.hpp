#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "resopt/adversary.hpp"
#include "resopt/analysis.hpp"
#include "resopt/dynamics.hpp"
#include "resopt/graph.hpp"
#include "resopt/objectives.hpp"
#include "resopt/trace.hpp"

namespace resopt {

// Malformed or inconsistent input documents.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json graph_to_json(const Graph& g);
// Accepts {"n", "directed", "edges", "names"} or a generator reference
// {"generator": "fig1" | "fig3" | "complete" | ..., ...}.
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json function_to_json(const ConvexFunction& f);
ConvexFunction function_from_json(const nlohmann::json& j);

BehaviorPtr behavior_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const StepSchedule& s);
StepSchedule schedule_from_json(const nlohmann::json& j);

struct RobustnessRequest {
  int r = 1;
  int s = 1;  // s == 1 is plain r-robustness
  std::optional<bool> expect;

  std::string key() const;  // "r2" or "rs22"
};

struct ScenarioChecks {
  struct Consensus {
    double tol = kDefaultConsensusTol;
    double tail = kDefaultTailFraction;
  };
  struct Safety {
    double eps = kDefaultSafetyEps;
    double tail = kDefaultTailFraction;
  };
  struct Contraction {
    double tol = 1e-9;
    std::optional<double> eta;  // default: the scheme's eta
  };
  struct Converge {
    double value = 0.0;
    double tol = kDefaultConsensusTol;
    double tail = kDefaultTailFraction;
  };

  std::optional<Consensus> consensus;
  std::optional<Safety> safety;
  std::optional<Contraction> contraction;
  std::optional<Converge> converge;
  std::vector<RobustnessRequest> robustness;
};

struct Scenario {
  std::string name;
  SimConfig config;
  ScenarioChecks checks;
};

// Relative graph file references are resolved against `base_dir`.
Scenario scenario_from_json(const nlohmann::json& j,
                            const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json trace_to_json(const Trace& trace);
Trace trace_from_json(const nlohmann::json& j);
// Columns: round,node,state,gradient,alpha. Gradient and alpha are empty for
// adversarial nodes and for the final state row.
void write_trace_csv(std::ostream& out, const Trace& trace);

// Runs the requested checks; "passed" is the conjunction.
nlohmann::json build_report(const Scenario& scenario, const Trace& trace);

// State trajectories of regular nodes above the width D(t).
std::string render_svg(const Trace& trace, const std::string& title);

SetPackingInstance packing_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace resopt
