#include "evacrec/scenario/scenario.hpp"

#include "evacrec/error.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec::scenario {

namespace {

road::RoadGraph graph_of(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.contains("graph")) {
    throw Error(ErrorCode::kSchemaViolation, "scenario has no 'graph'",
                {"missing top-level key 'graph'"});
  }
  const auto& g = j.at("graph");
  if (g.is_string()) {
    std::filesystem::path path = g.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    return road::load_graph(path);
  }
  if (g.is_object()) return road::graph_from_json(g);
  throw Error(ErrorCode::kSchemaViolation, "bad 'graph'",
              {"'graph' must be a file path or a graph object"});
}

void collect(const Error& e, std::vector<std::string>& out) {
  if (e.details().empty()) {
    out.emplace_back(e.what());
  } else {
    out.insert(out.end(), e.details().begin(), e.details().end());
  }
}

void place_check(const Position& pos, const road::RoadGraph& graph, const std::string& what,
                 std::vector<std::string>& out) {
  if (const auto* ref = std::get_if<NodeRef>(&pos); ref && !graph.index_of(ref->node)) {
    out.push_back(what + " references unknown graph node '" + ref->node + "'");
  } else if (std::holds_alternative<Coordinate>(pos) && graph.empty()) {
    out.push_back(what + " cannot be snapped: the road graph is empty");
  }
}

}  // namespace

SolverConfig solver_config_from_json(const Json& j) {
  SolverConfig c;
  std::vector<std::string> errors;
  if (!j.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "bad 'solver'", {"'solver' must be an object"});
  }
  auto flag = [&](const char* key, bool& target) {
    if (!j.contains(key)) return;
    if (j.at(key).is_boolean()) {
      target = j.at(key).get<bool>();
    } else {
      errors.push_back(std::string("solver.") + key + " must be a boolean");
    }
  };
  if (j.contains("exact_bound")) {
    if (j.at("exact_bound").is_number_integer() && j.at("exact_bound").get<int>() >= 0) {
      c.exact_bound = j.at("exact_bound").get<int>();
    } else {
      errors.emplace_back("solver.exact_bound must be a non-negative integer");
    }
  }
  flag("enforce_wheelchair", c.constraints.enforce_wheelchair);
  flag("enforce_shelter_capacity", c.constraints.enforce_shelter_capacity);
  flag("enforce_terrain", c.constraints.enforce_terrain);
  if (j.contains("objective")) {
    const auto& o = j.at("objective");
    if (o == "sum") {
      c.objective = rec::TimeObjective::kSum;
    } else if (o == "makespan") {
      c.objective = rec::TimeObjective::kMakespan;
    } else {
      errors.emplace_back("solver.objective must be \"sum\" or \"makespan\"");
    }
  }
  if (!errors.empty()) {
    throw Error(ErrorCode::kSchemaViolation, "invalid solver config", errors);
  }
  return c;
}

Json to_json(const SolverConfig& c) {
  return {{"exact_bound", c.exact_bound},
          {"enforce_wheelchair", c.constraints.enforce_wheelchair},
          {"enforce_shelter_capacity", c.constraints.enforce_shelter_capacity},
          {"enforce_terrain", c.constraints.enforce_terrain},
          {"objective", c.objective == rec::TimeObjective::kSum ? "sum" : "makespan"}};
}

std::vector<std::string> check_placement(const KnowledgeSnapshot& snapshot,
                                         const road::RoadGraph& graph) {
  std::vector<std::string> out;
  for (const auto& [id, mr] : snapshot.mobile_resources) {
    place_check(mr.position, graph, "mobile resource '" + id.str() + "'", out);
  }
  for (const auto& [id, rp] : snapshot.rescue_points) {
    place_check(rp.place.position, graph, "rescue point '" + id.str() + "'", out);
  }
  for (const auto& [id, s] : snapshot.shelters) {
    place_check(s.place.position, graph, "shelter '" + id.str() + "'", out);
  }
  return out;
}

Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir) {
  Scenario s;
  s.snapshot = snapshot_from_json(j);
  s.graph = graph_of(j, base_dir);
  if (j.contains("solver")) s.solver = solver_config_from_json(j.at("solver"));
  if (auto bad = check_placement(s.snapshot, s.graph); !bad.empty()) {
    throw Error(ErrorCode::kSchemaViolation, "scenario places entities off the graph",
                std::move(bad));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path), path.parent_path());
}

Json to_json(const Scenario& s) {
  Json j = to_json(s.snapshot);
  j["graph"] = road::to_json(s.graph);
  j["solver"] = to_json(s.solver);
  return j;
}

ValidationReport validate_scenario(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  ValidationReport report;
  if (!j.is_object()) {
    report.violations.emplace_back("scenario must be a JSON object");
    return report;
  }
  std::optional<KnowledgeSnapshot> snapshot;
  std::optional<road::RoadGraph> graph;
  try {
    snapshot = snapshot_from_json(j);
  } catch (const Error& e) {
    collect(e, report.violations);
  }
  try {
    graph = graph_of(j, path.parent_path());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    collect(e, report.violations);
  }
  if (j.contains("solver")) {
    try {
      solver_config_from_json(j.at("solver"));
    } catch (const Error& e) {
      collect(e, report.violations);
    }
  }
  if (snapshot && graph) {
    for (auto& v : check_placement(*snapshot, *graph)) report.violations.push_back(std::move(v));
  }
  return report;
}

rec::ProblemInstance make_instance(const Scenario& s) {
  return rec::make_instance(s.snapshot, s.graph, s.solver.constraints, s.solver.objective);
}

}  // namespace evacrec::scenario
