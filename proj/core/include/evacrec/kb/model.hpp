#pragma once

// Typed schema of the crisis knowledge base: persons, vehicles, places and the
// driver/vehicle pairings that the recommender allocates.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evacrec/geo.hpp"
#include "evacrec/ids.hpp"

namespace evacrec {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMinPriority = 1;
inline constexpr int kMaxPriority = 5;

enum class PersonRole { kAffected, kHumanResource };
enum class Mobility { kAmbulant, kWheelchair };
enum class Terrain { kLand, kWater, kAir };
enum class PlaceKind { kRescuePoint, kShelter, kDepot };

using TerrainSet = std::set<Terrain>;
using LicenseSet = std::set<std::string>;

struct Person {
  EntityId id;
  std::string name;
  PersonRole role = PersonRole::kHumanResource;
  Mobility mobility = Mobility::kAmbulant;
  LicenseSet licenses;

  friend bool operator==(const Person&, const Person&) = default;
};

enum class VehicleKind { kCar, kMinibus, kBoat, kOther };

struct VehicleCategory {
  VehicleKind kind = VehicleKind::kCar;
  std::string tag;  // only for kOther

  friend bool operator==(const VehicleCategory&,
                         const VehicleCategory&) = default;
};

struct Vehicle {
  EntityId id;
  VehicleCategory category;
  int seats = 1;  // including the driver's seat
  int wheelchair_slots = 0;
  std::string required_license;  // empty: no license required
  Terrain terrain = Terrain::kLand;

  // Passenger seats once the driver is seated.
  int effective_capacity() const noexcept { return seats - 1; }

  friend bool operator==(const Vehicle&, const Vehicle&) = default;
};

struct NodeRef {
  std::string node;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

// Either a geographic coordinate or a direct reference to a road-graph node.
using Position = std::variant<Coordinate, NodeRef>;

struct Place {
  EntityId id;
  PlaceKind kind = PlaceKind::kRescuePoint;
  Position position;

  friend bool operator==(const Place&, const Place&) = default;
};

struct RescuePoint {
  Place place;
  int evacuees = 0;
  int wheelchair_evacuees = 0;
  int priority = kMinPriority;  // 5 = most urgent

  const EntityId& id() const noexcept { return place.id; }
  friend bool operator==(const RescuePoint&, const RescuePoint&) = default;
};

struct Shelter {
  Place place;
  int capacity = 0;  // remaining intake in persons

  const EntityId& id() const noexcept { return place.id; }
  friend bool operator==(const Shelter&, const Shelter&) = default;
};

struct MobileResource {
  EntityId id;
  EntityId driver;
  EntityId vehicle;
  Position position;
  bool available = true;
  bool committed = false;
  std::int64_t updated_at_ms = 0;  // last availability report, epoch ms

  bool selectable() const noexcept { return available && !committed; }
  friend bool operator==(const MobileResource&,
                         const MobileResource&) = default;
};

enum class CrisisKindTag { kFlood, kFire, kOther };

struct CrisisKind {
  CrisisKindTag kind = CrisisKindTag::kOther;
  std::string tag;  // only for kOther

  friend bool operator==(const CrisisKind&, const CrisisKind&) = default;
};

struct Crisis {
  EntityId id{"crisis"};
  CrisisKind kind;
  // Rescue points whose reachable terrain differs from the crisis default.
  std::map<EntityId, TerrainSet> terrain_overrides;

  TerrainSet default_terrains() const;
  TerrainSet terrains_for(const EntityId& rescue_point) const;

  friend bool operator==(const Crisis&, const Crisis&) = default;
};

struct KnowledgeSnapshot {
  int schema_version = kSchemaVersion;
  Crisis crisis;
  std::map<EntityId, Person> persons;
  std::map<EntityId, Vehicle> vehicles;
  std::map<EntityId, MobileResource> mobile_resources;
  std::map<EntityId, RescuePoint> rescue_points;
  std::map<EntityId, Shelter> shelters;

  friend bool operator==(const KnowledgeSnapshot&,
                         const KnowledgeSnapshot&) = default;
};

// Collects every schema, invariant and referential-closure violation.
// An empty result means the snapshot is valid.
std::vector<std::string> validate(const KnowledgeSnapshot& snapshot);

std::string_view to_string(PersonRole role) noexcept;
std::string_view to_string(Mobility mobility) noexcept;
std::string_view to_string(Terrain terrain) noexcept;
std::string to_string(const VehicleCategory& category);
std::string to_string(const CrisisKind& kind);

std::optional<PersonRole> parse_person_role(std::string_view text);
std::optional<Mobility> parse_mobility(std::string_view text);
std::optional<Terrain> parse_terrain(std::string_view text);
std::optional<VehicleCategory> parse_vehicle_category(std::string_view text);
std::optional<CrisisKind> parse_crisis_kind(std::string_view text);

}  // namespace evacrec
