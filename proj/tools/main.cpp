// resopt: run scenarios, inspect graphs, replay the bundled reproductions.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "resopt/analysis.hpp"
#include "resopt/dynamics.hpp"
#include "resopt/io.hpp"
#include "resopt/reproduce.hpp"
#include "resopt/robustness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

json pair_json(const resopt::RobustnessResult& res) {
  json out = {{"holds", res.holds}};
  if (res.witness) {
    out["witness"] = {{"S1", res.witness->first}, {"S2", res.witness->second}};
  }
  return out;
}

int cmd_run(const std::string& file, const std::string& out_dir,
            std::optional<std::uint64_t> seed) {
  resopt::Scenario sc = resopt::load_scenario(file);
  if (seed) sc.config.seed = *seed;
  const resopt::Trace trace = resopt::run(sc.config);
  const json report = resopt::build_report(sc, trace);

  const fs::path dir = out_dir.empty() ? fs::path("out") / sc.name : fs::path(out_dir);
  fs::create_directories(dir);
  std::ostringstream csv;
  resopt::write_trace_csv(csv, trace);
  resopt::write_file_atomic(dir / "trace.csv", csv.str());
  resopt::write_file_atomic(dir / "trace.json", resopt::trace_to_json(trace).dump());
  resopt::write_file_atomic(dir / "report.json", report.dump(2) + "\n");
  resopt::write_file_atomic(dir / "plot.svg", resopt::render_svg(trace, sc.name));

  std::cout << report.dump(2) << "\n";
  std::cerr << "wrote " << dir.string() << "/{trace.csv,trace.json,report.json,plot.svg}\n";
  return report["passed"].get<bool>() ? kPass : kCheckFailed;
}

int cmd_check_graph(const std::string& file, int r, std::vector<int> rs,
                    int max_local, bool force) {
  const resopt::Graph g = resopt::graph_from_json(resopt::read_json_file(file));
  resopt::ExactCheckOptions opts;
  opts.force = force;
  json out = {{"n", g.size()}, {"edges", g.edge_count()}};
  if (r >= 0) out["r_robust"] = pair_json(resopt::is_r_robust(g, r, opts)), out["r"] = r;
  if (rs.size() == 2) {
    out["rs"] = rs;
    out["rs_robust"] = pair_json(resopt::is_rs_robust(g, rs[0], rs[1], opts));
  }
  if (max_local >= 0) {
    if (!force) resopt::enforce_size_guard(g, opts);
    const auto res = resopt::max_r_local_set(g, max_local);
    json names = json::array();
    for (resopt::NodeId v : res.set) names.push_back(g.name(v));
    out["max_local"] = {{"r", max_local},       {"size", res.size()},
                        {"set", res.set},       {"names", names},
                        {"exhaustive", res.exhaustive},
                        {"certified", res.certified}};
  }
  std::cout << out.dump(2) << "\n";
  return kPass;
}

int cmd_reproduce(const std::string& name) {
  const auto outcome = resopt::repro::run(name);
  for (const auto& c : outcome.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.label;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << name << ": " << (outcome.passed() ? "PASS" : "FAIL") << "\n";
  return outcome.passed() ? kPass : kCheckFailed;
}

int cmd_reduce(const std::string& file, const std::string& out_file) {
  const auto inst = resopt::packing_from_json(resopt::read_json_file(file));
  const resopt::Graph g = resopt::set_packing_to_graph(inst);
  fs::path out = out_file;
  if (out.empty()) {
    out = fs::path(file);
    out.replace_extension(".graph.json");
  }
  resopt::write_file_atomic(out, resopt::graph_to_json(g).dump(2) + "\n");
  resopt::enforce_size_guard(g, {});
  const int packing = resopt::brute_force_set_packing(inst);
  const auto local = resopt::max_r_local_set(g, 1);
  std::string verdict;
  if (packing < 2) {
    verdict = "n/a (k<2)";
  } else if (!local.exhaustive) {
    verdict = "unknown (search budget exhausted)";
  } else {
    verdict = packing == local.size() ? "equal" : "differ";
  }
  for (const auto& s : inst.subsets) {
    if (s.size() < 2) {
      std::cerr << "warning: subsets with fewer than 2 elements can make the "
                   "local set larger than the packing\n";
      break;
    }
  }
  std::cout << "graph: " << out.string() << "\n"
            << "max packing: " << packing << "\n"
            << "max 1-local set: " << local.size() << "\n"
            << "verdict: " << verdict << "\n";
  return verdict == "differ" ? kCheckFailed : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient distributed optimization simulator"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run a scenario and write trace, report and plot");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--out", out_dir, "Output directory (default out/<name>)");
  run->add_option("--seed", seed, "Override the scenario seed");

  int r = -1;
  std::vector<int> rs;
  int max_local = -1;
  bool force = false;
  auto* check = app.add_subcommand("check-graph", "Exact robustness / local-set analysis");
  check->add_option("file", file, "Graph JSON")->required();
  auto* opt_r = check->add_option("--r", r, "Check r-robustness");
  auto* opt_rs = check->add_option("--rs", rs, "Check (r,s)-robustness")->expected(2);
  auto* opt_local = check->add_option("--max-local", max_local, "Maximum r-local set");
  check->add_flag("--force", force, "Ignore the size guard");
  opt_r->excludes(opt_rs)->excludes(opt_local);
  opt_rs->excludes(opt_local);

  std::string name;
  auto* repro = app.add_subcommand("reproduce", "Replay a bundled scenario and check it");
  repro->add_option("name", name, "Scenario name")
      ->required()
      ->check(CLI::IsMember(resopt::repro::names()));

  std::string graph_out;
  auto* reduce = app.add_subcommand("reduce", "Set-Packing to 1-local-set reduction");
  reduce->add_option("file", file, "Instance JSON {\"n\", \"subsets\"}")->required();
  reduce->add_option("--out", graph_out, "Where to write the constructed graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kBadInput;
  }

  try {
    if (*run) return cmd_run(file, out_dir, seed);
    if (*check) {
      if (r < 0 && rs.empty() && max_local < 0) {
        std::cerr << "check-graph: one of --r, --rs, --max-local is required\n";
        return kBadInput;
      }
      return cmd_check_graph(file, r, rs, max_local, force);
    }
    if (*repro) return cmd_reproduce(name);
    if (*reduce) return cmd_reduce(file, graph_out);
  } catch (const resopt::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kBadInput;
  } catch (const resopt::SizeGuardError& e) {
    std::cerr << "error: " << e.what()
              << " (use --force or set RESOPT_SIZE_GUARD)\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kPass;
}
