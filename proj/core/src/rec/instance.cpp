#include "evacrec/rec/instance.hpp"

#include "evacrec/error.hpp"
#include "evacrec/fingerprint.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec::rec {

std::vector<road::Waypoint> resource_waypoints(const KnowledgeSnapshot& snapshot,
                                               bool selectable_only) {
  std::vector<road::Waypoint> out;
  for (const auto& [id, mr] : snapshot.mobile_resources) {
    if (!selectable_only || mr.selectable()) out.push_back({id, mr.position});
  }
  return out;
}

std::vector<road::Waypoint> rescue_point_waypoints(const KnowledgeSnapshot& snapshot) {
  std::vector<road::Waypoint> out;
  for (const auto& [id, rp] : snapshot.rescue_points) {
    out.push_back({id, rp.place.position});
  }
  return out;
}

std::vector<road::Waypoint> shelter_waypoints(const KnowledgeSnapshot& snapshot) {
  std::vector<road::Waypoint> out;
  for (const auto& [id, s] : snapshot.shelters) out.push_back({id, s.place.position});
  return out;
}

ProblemInstance instance_skeleton(const KnowledgeSnapshot& snapshot,
                                  const ConstraintSet& constraints,
                                  TimeObjective objective) {
  ProblemInstance inst;
  for (const auto& [id, mr] : snapshot.mobile_resources) {
    if (!mr.selectable()) continue;
    inst.resources.push_back({id, mr.driver, snapshot.vehicles.at(mr.vehicle)});
  }
  for (const auto& [id, rp] : snapshot.rescue_points) inst.rescue_points.push_back(rp);
  for (const auto& [id, s] : snapshot.shelters) inst.shelters.push_back(s);
  inst.crisis = snapshot.crisis;
  inst.constraints = constraints;
  inst.time_objective = objective;
  return inst;
}

ProblemInstance make_instance(const KnowledgeSnapshot& snapshot,
                              const road::RoadGraph& graph,
                              const ConstraintSet& constraints,
                              TimeObjective objective) {
  auto inst = instance_skeleton(snapshot, constraints, objective);
  const auto resources = resource_waypoints(snapshot, true);
  const auto rps = rescue_point_waypoints(snapshot);
  const auto shelters = shelter_waypoints(snapshot);
  try {
    inst.times_to_rp = road::build_matrix(graph, resources, rps);
    inst.times_rp_to_shelter = road::build_matrix(graph, rps, shelters);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnknownNode || e.code() == ErrorCode::kEmptyGraph) {
      throw Error(ErrorCode::kMatrixIncomplete,
                  std::string("cannot place every entity on the road graph: ") +
                      e.what());
    }
    throw;
  }
  return inst;
}

std::string instance_fingerprint(const KnowledgeSnapshot& snapshot,
                                 const ConstraintSet& constraints,
                                 TimeObjective objective) {
  Fingerprint fp;
  for (const auto& [id, mr] : snapshot.mobile_resources) {
    if (!mr.selectable()) continue;
    Json j = to_json(mr);
    j.erase("updated_at_ms");
    fp.add(j.dump());
    fp.add(to_json(snapshot.vehicles.at(mr.vehicle)).dump());
  }
  for (const auto& [id, rp] : snapshot.rescue_points) fp.add(to_json(rp).dump());
  for (const auto& [id, s] : snapshot.shelters) fp.add(to_json(s).dump());
  fp.add(to_json(snapshot.crisis).dump());
  fp.add(static_cast<std::int64_t>(constraints.enforce_wheelchair))
      .add(static_cast<std::int64_t>(constraints.enforce_shelter_capacity))
      .add(static_cast<std::int64_t>(constraints.enforce_terrain))
      .add(static_cast<std::int64_t>(objective));
  return fp.hex();
}

}  // namespace evacrec::rec
