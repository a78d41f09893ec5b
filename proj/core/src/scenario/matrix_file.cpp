#include "evacrec/scenario/matrix_file.hpp"

#include <fstream>

#include "evacrec/error.hpp"
#include "evacrec/fingerprint.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec::scenario {

namespace {

void add_waypoints(Fingerprint& fp, const char* tag, const std::vector<road::Waypoint>& wps) {
  fp.add(tag).add(static_cast<std::int64_t>(wps.size()));
  for (const auto& w : wps) fp.add(w.id.str()).add(to_json(w.position).dump());
}

}  // namespace

std::string matrix_fingerprint(const KnowledgeSnapshot& snapshot, const road::RoadGraph& graph) {
  Fingerprint fp;
  fp.add(graph.fingerprint());
  add_waypoints(fp, "resources", rec::resource_waypoints(snapshot, false));
  add_waypoints(fp, "rescue_points", rec::rescue_point_waypoints(snapshot));
  add_waypoints(fp, "shelters", rec::shelter_waypoints(snapshot));
  return fp.hex();
}

MatrixFile build_matrix_file(const Scenario& s) {
  const auto resources = rec::resource_waypoints(s.snapshot, false);
  const auto rps = rec::rescue_point_waypoints(s.snapshot);
  const auto shelters = rec::shelter_waypoints(s.snapshot);
  MatrixFile f;
  f.fingerprint = matrix_fingerprint(s.snapshot, s.graph);
  f.to_rescue_points = road::build_matrix(s.graph, resources, rps);
  f.to_shelters = road::build_matrix(s.graph, rps, shelters);
  return f;
}

nlohmann::json to_json(const MatrixFile& f) {
  return {{"fingerprint", f.fingerprint},
          {"to_rescue_points", road::to_json(f.to_rescue_points)},
          {"to_shelters", road::to_json(f.to_shelters)}};
}

MatrixFile matrix_file_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("fingerprint") || !j.at("fingerprint").is_string() ||
      !j.contains("to_rescue_points") || !j.contains("to_shelters")) {
    throw Error(ErrorCode::kSchemaViolation, "malformed matrix file",
                {"matrix file needs 'fingerprint', 'to_rescue_points' and 'to_shelters'"});
  }
  return {j.at("fingerprint").get<std::string>(),
          road::matrix_from_json(j.at("to_rescue_points")),
          road::matrix_from_json(j.at("to_shelters"))};
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& f) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << to_json(f).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  return matrix_file_from_json(read_json_file(path));
}

rec::ProblemInstance make_instance(const Scenario& s, const MatrixFile& f) {
  const auto expected = matrix_fingerprint(s.snapshot, s.graph);
  if (f.fingerprint != expected) {
    throw Error(ErrorCode::kStaleMatrix,
                "matrix file does not match the scenario's positions or graph",
                {"matrix fingerprint " + f.fingerprint + ", scenario fingerprint " + expected});
  }
  return instance_from_matrices(s.snapshot, f, s.solver);
}

rec::ProblemInstance instance_from_matrices(const KnowledgeSnapshot& snapshot,
                                            const MatrixFile& f, const SolverConfig& config) {
  auto inst = rec::instance_skeleton(snapshot, config.constraints, config.objective);
  std::vector<EntityId> selectable;
  for (const auto& r : inst.resources) selectable.push_back(r.id);
  inst.times_to_rp = f.to_rescue_points.select_origins(selectable);
  inst.times_rp_to_shelter = f.to_shelters;
  return inst;
}

}  // namespace evacrec::scenario
