#pragma once

// Scenario file: a knowledge snapshot (top-level keys as in a snapshot file),
// plus
//   "graph":  path relative to the scenario file, or an inline graph object
//   "solver": {"exact_bound", "enforce_wheelchair", "enforce_shelter_capacity",
//              "enforce_terrain", "objective": "sum" | "makespan"}  (optional)

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/kb/model.hpp"
#include "evacrec/rec/instance.hpp"
#include "evacrec/road/road_graph.hpp"

namespace evacrec::scenario {

struct SolverConfig {
  int exact_bound = 12;
  rec::ConstraintSet constraints;
  rec::TimeObjective objective = rec::TimeObjective::kSum;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct Scenario {
  KnowledgeSnapshot snapshot;
  road::RoadGraph graph;
  SolverConfig solver;
};

// Throws Error(kSchemaViolation), Error(kGraphViolation) or, for a graph file
// that cannot be read, Error(kIoError).
Scenario scenario_from_json(const nlohmann::json& j,
                            const std::filesystem::path& base_dir);

// Throws Error(kIoError) for unreadable or unparseable files, otherwise as
// scenario_from_json.
Scenario load_scenario(const std::filesystem::path& path);

// Graph is written inline.
nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const nlohmann::json& j);

// Every place given as a node reference must name a graph node.
std::vector<std::string> check_placement(const KnowledgeSnapshot& snapshot,
                                         const road::RoadGraph& graph);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Collects snapshot, graph, solver and placement violations. Throws
// Error(kIoError) only when the file or its graph cannot be read or parsed.
ValidationReport validate_scenario(const std::filesystem::path& path);

rec::ProblemInstance make_instance(const Scenario& scenario);

}  // namespace evacrec::scenario
