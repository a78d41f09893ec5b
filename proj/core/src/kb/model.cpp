#include "evacrec/kb/model.hpp"

#include <cmath>
#include <map>

namespace evacrec {

namespace {

constexpr std::string_view kOtherPrefix = "other:";

bool valid_position(const Position& position) {
  if (const auto* c = std::get_if<Coordinate>(&position)) {
    return std::isfinite(c->lat) && std::isfinite(c->lon) && c->lat >= -90.0 &&
           c->lat <= 90.0 && c->lon >= -180.0 && c->lon <= 180.0;
  }
  return !std::get<NodeRef>(position).node.empty();
}

std::string quoted(const EntityId& id) { return "'" + id.str() + "'"; }

}  // namespace

TerrainSet Crisis::default_terrains() const {
  switch (kind.kind) {
    case CrisisKindTag::kFlood: return {Terrain::kWater, Terrain::kLand};
    case CrisisKindTag::kFire: return {Terrain::kLand};
    case CrisisKindTag::kOther: break;
  }
  return {Terrain::kLand, Terrain::kWater, Terrain::kAir};
}

TerrainSet Crisis::terrains_for(const EntityId& rescue_point) const {
  if (auto it = terrain_overrides.find(rescue_point);
      it != terrain_overrides.end()) {
    return it->second;
  }
  return default_terrains();
}

std::vector<std::string> validate(const KnowledgeSnapshot& s) {
  std::vector<std::string> out;
  auto fail = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (s.schema_version != kSchemaVersion) {
    fail("schema_version " + std::to_string(s.schema_version) +
         " is not supported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (s.crisis.id.empty()) fail("crisis: id must be non-empty");

  for (const auto& [key, p] : s.persons) {
    if (p.id.empty()) fail("person: id must be non-empty");
    if (key != p.id) fail("person " + quoted(p.id) + ": key mismatch");
  }

  for (const auto& [key, v] : s.vehicles) {
    const std::string who = "vehicle " + quoted(v.id);
    if (v.id.empty()) fail("vehicle: id must be non-empty");
    if (key != v.id) fail(who + ": key mismatch");
    if (v.seats < 1) fail(who + ": seats must be >= 1");
    if (v.wheelchair_slots < 0) fail(who + ": wheelchair_slots must be >= 0");
    if (v.seats >= 1 && v.wheelchair_slots > v.seats - 1) {
      fail(who + ": wheelchair_slots must be <= seats - 1");
    }
  }

  for (const auto& [key, rp] : s.rescue_points) {
    const std::string who = "rescue point " + quoted(rp.id());
    if (rp.id().empty()) fail("rescue point: id must be non-empty");
    if (key != rp.id()) fail(who + ": key mismatch");
    if (rp.place.kind != PlaceKind::kRescuePoint) fail(who + ": wrong place kind");
    if (!valid_position(rp.place.position)) fail(who + ": invalid position");
    if (rp.evacuees < 0) fail(who + ": evacuees must be >= 0");
    if (rp.wheelchair_evacuees < 0) fail(who + ": wheelchair_evacuees must be >= 0");
    if (rp.wheelchair_evacuees > rp.evacuees) {
      fail(who + ": wheelchair_evacuees must be <= evacuees");
    }
    if (rp.priority < kMinPriority || rp.priority > kMaxPriority) {
      fail(who + ": priority must be in [1, 5]");
    }
  }

  for (const auto& [key, sh] : s.shelters) {
    const std::string who = "shelter " + quoted(sh.id());
    if (sh.id().empty()) fail("shelter: id must be non-empty");
    if (key != sh.id()) fail(who + ": key mismatch");
    if (sh.place.kind != PlaceKind::kShelter) fail(who + ": wrong place kind");
    if (!valid_position(sh.place.position)) fail(who + ": invalid position");
    if (sh.capacity < 0) fail(who + ": capacity must be >= 0");
  }

  std::map<EntityId, EntityId> driver_use;
  std::map<EntityId, EntityId> vehicle_use;
  for (const auto& [key, mr] : s.mobile_resources) {
    const std::string who = "mobile resource " + quoted(mr.id);
    if (mr.id.empty()) fail("mobile resource: id must be non-empty");
    if (key != mr.id) fail(who + ": key mismatch");
    if (!valid_position(mr.position)) fail(who + ": invalid position");

    const auto driver = s.persons.find(mr.driver);
    const auto vehicle = s.vehicles.find(mr.vehicle);
    if (driver == s.persons.end()) {
      fail(who + ": unknown driver " + quoted(mr.driver));
    } else if (driver->second.role != PersonRole::kHumanResource) {
      fail(who + ": driver " + quoted(mr.driver) + " is not a human resource");
    }
    if (vehicle == s.vehicles.end()) {
      fail(who + ": unknown vehicle " + quoted(mr.vehicle));
    }
    if (driver != s.persons.end() && vehicle != s.vehicles.end()) {
      const auto& license = vehicle->second.required_license;
      if (!license.empty() && !driver->second.licenses.contains(license)) {
        fail(who + ": driver lacks license '" + license + "'");
      }
    }
    if (auto [it, fresh] = driver_use.emplace(mr.driver, mr.id); !fresh) {
      fail(who + ": driver " + quoted(mr.driver) + " already paired in " +
           quoted(it->second));
    }
    if (auto [it, fresh] = vehicle_use.emplace(mr.vehicle, mr.id); !fresh) {
      fail(who + ": vehicle " + quoted(mr.vehicle) + " already paired in " +
           quoted(it->second));
    }
  }

  for (const auto& [rp, terrains] : s.crisis.terrain_overrides) {
    if (!s.rescue_points.contains(rp)) {
      fail("crisis: terrain override for unknown rescue point " + quoted(rp));
    }
    if (terrains.empty()) {
      fail("crisis: terrain override for " + quoted(rp) + " is empty");
    }
  }
  return out;
}

std::string_view to_string(PersonRole role) noexcept {
  return role == PersonRole::kAffected ? "affected" : "human_resource";
}

std::string_view to_string(Mobility mobility) noexcept {
  return mobility == Mobility::kAmbulant ? "ambulant" : "wheelchair";
}

std::string_view to_string(Terrain terrain) noexcept {
  switch (terrain) {
    case Terrain::kLand: return "land";
    case Terrain::kWater: return "water";
    case Terrain::kAir: return "air";
  }
  return "land";
}

std::string to_string(const VehicleCategory& category) {
  switch (category.kind) {
    case VehicleKind::kCar: return "car";
    case VehicleKind::kMinibus: return "minibus";
    case VehicleKind::kBoat: return "boat";
    case VehicleKind::kOther: break;
  }
  if (category.tag.empty()) return "other";
  return std::string(kOtherPrefix) + category.tag;
}

std::string to_string(const CrisisKind& kind) {
  switch (kind.kind) {
    case CrisisKindTag::kFlood: return "flood";
    case CrisisKindTag::kFire: return "fire";
    case CrisisKindTag::kOther: break;
  }
  if (kind.tag.empty()) return "other";
  return std::string(kOtherPrefix) + kind.tag;
}

std::optional<PersonRole> parse_person_role(std::string_view text) {
  if (text == "affected") return PersonRole::kAffected;
  if (text == "human_resource") return PersonRole::kHumanResource;
  return std::nullopt;
}

std::optional<Mobility> parse_mobility(std::string_view text) {
  if (text == "ambulant") return Mobility::kAmbulant;
  if (text == "wheelchair") return Mobility::kWheelchair;
  return std::nullopt;
}

std::optional<Terrain> parse_terrain(std::string_view text) {
  if (text == "land") return Terrain::kLand;
  if (text == "water") return Terrain::kWater;
  if (text == "air") return Terrain::kAir;
  return std::nullopt;
}

std::optional<VehicleCategory> parse_vehicle_category(std::string_view text) {
  if (text == "car") return VehicleCategory{VehicleKind::kCar, {}};
  if (text == "minibus") return VehicleCategory{VehicleKind::kMinibus, {}};
  if (text == "boat") return VehicleCategory{VehicleKind::kBoat, {}};
  if (text == "other") return VehicleCategory{VehicleKind::kOther, {}};
  if (text.starts_with(kOtherPrefix) && text.size() > kOtherPrefix.size()) {
    return VehicleCategory{VehicleKind::kOther,
                           std::string(text.substr(kOtherPrefix.size()))};
  }
  return std::nullopt;
}

std::optional<CrisisKind> parse_crisis_kind(std::string_view text) {
  if (text == "flood") return CrisisKind{CrisisKindTag::kFlood, {}};
  if (text == "fire") return CrisisKind{CrisisKindTag::kFire, {}};
  if (text == "other") return CrisisKind{CrisisKindTag::kOther, {}};
  if (text.starts_with(kOtherPrefix) && text.size() > kOtherPrefix.size()) {
    return CrisisKind{CrisisKindTag::kOther,
                      std::string(text.substr(kOtherPrefix.size()))};
  }
  return std::nullopt;
}

}  // namespace evacrec
