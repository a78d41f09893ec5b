#pragma once

#include <string>
#include <vector>

#include "evacrec/kb/model.hpp"
#include "evacrec/road/road_graph.hpp"
#include "evacrec/road/travel_matrix.hpp"

namespace evacrec::rec {

using road::Seconds;

// Capacity and single-use are always enforced: they define feasibility.
// The remaining constraints can be switched off for what-if runs.
struct ConstraintSet {
  bool enforce_wheelchair = true;
  bool enforce_shelter_capacity = true;
  bool enforce_terrain = true;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

// How assignment leg times aggregate into the plan's time objective.
enum class TimeObjective {
  kSum,       // total travel time over all trips (default)
  kMakespan,  // longest single trip
};

// A selectable driver/vehicle pair as the solver sees it.
struct FleetMember {
  EntityId id;
  EntityId driver;
  Vehicle vehicle;

  int capacity() const noexcept { return vehicle.effective_capacity(); }
  friend bool operator==(const FleetMember&, const FleetMember&) = default;
};

struct ProblemInstance {
  std::vector<FleetMember> resources;
  std::vector<RescuePoint> rescue_points;
  std::vector<Shelter> shelters;
  Crisis crisis;  // terrain compatibility per rescue point
  ConstraintSet constraints;
  TimeObjective time_objective = TimeObjective::kSum;
  road::TravelTimeMatrix times_to_rp;          // resource -> rescue point
  road::TravelTimeMatrix times_rp_to_shelter;  // rescue point -> shelter
};

// Waypoints for matrix building, in id order.
std::vector<road::Waypoint> resource_waypoints(const KnowledgeSnapshot& snapshot,
                                               bool selectable_only);
std::vector<road::Waypoint> rescue_point_waypoints(const KnowledgeSnapshot& snapshot);
std::vector<road::Waypoint> shelter_waypoints(const KnowledgeSnapshot& snapshot);

// Instance over the selectable resources of `snapshot` without matrices.
ProblemInstance instance_skeleton(const KnowledgeSnapshot& snapshot,
                                  const ConstraintSet& constraints,
                                  TimeObjective objective = TimeObjective::kSum);

// Freezes the snapshot into an instance and computes both matrices on
// `graph`. Unsnappable places raise Error(kMatrixIncomplete).
ProblemInstance make_instance(const KnowledgeSnapshot& snapshot,
                              const road::RoadGraph& graph,
                              const ConstraintSet& constraints,
                              TimeObjective objective = TimeObjective::kSum);

// Stable hash of everything the solver reads except the matrices (which are
// a function of positions and the graph): resources with vehicle data and
// positions, rescue points, shelters, crisis and constraints.
std::string instance_fingerprint(const KnowledgeSnapshot& snapshot,
                                 const ConstraintSet& constraints,
                                 TimeObjective objective);

}  // namespace evacrec::rec
