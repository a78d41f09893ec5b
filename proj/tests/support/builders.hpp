#pragma once

// Small helpers for building problem instances by hand in tests.

#include <optional>
#include <string>
#include <vector>

#include "evacrec/rec/instance.hpp"
#include "evacrec/road/travel_matrix.hpp"

namespace evacrec::testing {

using rec::Seconds;
using Row = std::vector<std::optional<Seconds>>;

inline rec::FleetMember member(const std::string& id, int seats, int wheelchair_slots = 0,
                               Terrain terrain = Terrain::kLand) {
  rec::FleetMember f;
  f.id = EntityId(id);
  f.driver = EntityId("d-" + id);
  f.vehicle.id = EntityId("v-" + id);
  f.vehicle.seats = seats;
  f.vehicle.wheelchair_slots = wheelchair_slots;
  f.vehicle.terrain = terrain;
  if (terrain == Terrain::kWater) f.vehicle.category = {VehicleKind::kBoat, {}};
  return f;
}

inline RescuePoint rescue_point(const std::string& id, int evacuees, int wheelchair = 0,
                                int priority = 1) {
  RescuePoint rp;
  rp.place = {EntityId(id), PlaceKind::kRescuePoint, NodeRef{"n"}};
  rp.evacuees = evacuees;
  rp.wheelchair_evacuees = wheelchair;
  rp.priority = priority;
  return rp;
}

inline Shelter shelter(const std::string& id, int capacity) {
  Shelter s;
  s.place = {EntityId(id), PlaceKind::kShelter, NodeRef{"n"}};
  s.capacity = capacity;
  return s;
}

inline road::TravelTimeMatrix matrix(const std::vector<EntityId>& origins,
                                     const std::vector<EntityId>& destinations,
                                     const std::vector<Row>& rows) {
  std::vector<road::TravelTime> entries;
  for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
  return road::TravelTimeMatrix(origins, destinations, std::move(entries));
}

// t_rp: one row per resource, t_ps: one row per rescue point, both in the
// order given.
inline rec::ProblemInstance instance(std::vector<rec::FleetMember> resources,
                                     std::vector<RescuePoint> rescue_points,
                                     std::vector<Shelter> shelters,
                                     const std::vector<Row>& t_rp,
                                     const std::vector<Row>& t_ps) {
  rec::ProblemInstance inst;
  std::vector<EntityId> r_ids, p_ids, s_ids;
  for (const auto& r : resources) r_ids.push_back(r.id);
  for (const auto& p : rescue_points) p_ids.push_back(p.id());
  for (const auto& s : shelters) s_ids.push_back(s.id());
  inst.resources = std::move(resources);
  inst.rescue_points = std::move(rescue_points);
  inst.shelters = std::move(shelters);
  inst.crisis.kind = {CrisisKindTag::kFlood, {}};
  inst.times_to_rp = matrix(r_ids, p_ids, t_rp);
  inst.times_rp_to_shelter = matrix(p_ids, s_ids, t_ps);
  return inst;
}

}  // namespace evacrec::testing
