#include "evacrec/kb/knowledge_base.hpp"

#include <utility>

#include "evacrec/error.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec {

namespace {

void require_valid(const KnowledgeSnapshot& s) {
  auto violations = validate(s);
  if (!violations.empty()) {
    const std::string first = violations.front();
    throw Error(ErrorCode::kSchemaViolation, first, std::move(violations));
  }
}

template <typename T>
EntityId insert_or_confirm(std::map<EntityId, T>& table, const EntityId& id,
                           const T& entity, const char* kind) {
  if (id.empty()) {
    throw Error(ErrorCode::kSchemaViolation,
                std::string(kind) + ": id must be non-empty");
  }
  auto [it, fresh] = table.emplace(id, entity);
  if (!fresh && !(it->second == entity)) {
    throw Error(ErrorCode::kDuplicateId, std::string(kind) + " '" + id.str() +
                                             "' already exists with different fields");
  }
  return id;
}

}  // namespace

KnowledgeBase::KnowledgeBase(KnowledgeSnapshot snapshot)
    : snapshot_(std::move(snapshot)) {
  require_valid(snapshot_);
}

template <typename Mutator>
void KnowledgeBase::mutate(Mutator&& mutator) {
  KnowledgeSnapshot next = snapshot_;
  const bool positions_changed = mutator(next);
  require_valid(next);
  if (next == snapshot_) return;  // identical write: no new revision
  snapshot_ = std::move(next);
  ++revision_;
  if (positions_changed) ++positions_revision_;
}

EntityId KnowledgeBase::upsert_entity(EntityKind kind,
                                      const nlohmann::json& fields) {
  switch (kind) {
    case EntityKind::kPerson: return upsert(person_from_json(fields));
    case EntityKind::kVehicle: return upsert(vehicle_from_json(fields));
    case EntityKind::kMobileResource:
      return upsert(mobile_resource_from_json(fields));
    case EntityKind::kRescuePoint: return upsert(rescue_point_from_json(fields));
    case EntityKind::kShelter: return upsert(shelter_from_json(fields));
    case EntityKind::kCrisis: {
      auto crisis = crisis_from_json(fields);
      set_crisis(crisis);
      return crisis.id;
    }
  }
  throw Error(ErrorCode::kSchemaViolation, "unknown entity kind");
}

EntityId KnowledgeBase::upsert(const Person& person) {
  if (auto it = snapshot_.persons.find(person.id);
      it != snapshot_.persons.end() && it->second == person) {
    return person.id;
  }
  mutate([&](KnowledgeSnapshot& s) {
    insert_or_confirm(s.persons, person.id, person, "person");
    return false;
  });
  return person.id;
}

EntityId KnowledgeBase::upsert(const Vehicle& vehicle) {
  if (auto it = snapshot_.vehicles.find(vehicle.id);
      it != snapshot_.vehicles.end() && it->second == vehicle) {
    return vehicle.id;
  }
  mutate([&](KnowledgeSnapshot& s) {
    insert_or_confirm(s.vehicles, vehicle.id, vehicle, "vehicle");
    return false;
  });
  return vehicle.id;
}

EntityId KnowledgeBase::upsert(const RescuePoint& rescue_point) {
  if (auto it = snapshot_.rescue_points.find(rescue_point.id());
      it != snapshot_.rescue_points.end() && it->second == rescue_point) {
    return rescue_point.id();
  }
  mutate([&](KnowledgeSnapshot& s) {
    insert_or_confirm(s.rescue_points, rescue_point.id(), rescue_point,
                      "rescue point");
    return true;
  });
  return rescue_point.id();
}

EntityId KnowledgeBase::upsert(const Shelter& shelter) {
  if (auto it = snapshot_.shelters.find(shelter.id());
      it != snapshot_.shelters.end() && it->second == shelter) {
    return shelter.id();
  }
  mutate([&](KnowledgeSnapshot& s) {
    insert_or_confirm(s.shelters, shelter.id(), shelter, "shelter");
    return true;
  });
  return shelter.id();
}

EntityId KnowledgeBase::upsert(const MobileResource& resource) {
  if (auto it = snapshot_.mobile_resources.find(resource.id);
      it != snapshot_.mobile_resources.end() && it->second == resource) {
    return resource.id;
  }
  if (snapshot_.mobile_resources.contains(resource.id)) {
    throw Error(ErrorCode::kDuplicateId,
                "mobile resource '" + resource.id.str() +
                    "' already exists with different fields");
  }
  const auto& created = pair_mobile_resource(resource.driver, resource.vehicle,
                                             resource.position, resource.id);
  if (!resource.available || resource.committed || resource.updated_at_ms != 0) {
    mutate([&](KnowledgeSnapshot& s) {
      auto& m = s.mobile_resources.at(created.id);
      m.available = resource.available;
      m.committed = resource.committed;
      m.updated_at_ms = resource.updated_at_ms;
      return false;
    });
  }
  return resource.id;
}

void KnowledgeBase::set_crisis(const Crisis& crisis) {
  mutate([&](KnowledgeSnapshot& s) {
    s.crisis = crisis;
    return false;
  });
}

const RescuePoint& KnowledgeBase::put_rescue_point(
    const RescuePoint& rescue_point) {
  mutate([&](KnowledgeSnapshot& s) {
    auto& slot = s.rescue_points[rescue_point.id()];
    const bool moved = !(slot.place.position == rescue_point.place.position) ||
                       slot.id().empty();
    slot = rescue_point;
    return moved;
  });
  return snapshot_.rescue_points.at(rescue_point.id());
}

const Shelter& KnowledgeBase::put_shelter(const Shelter& shelter) {
  mutate([&](KnowledgeSnapshot& s) {
    auto& slot = s.shelters[shelter.id()];
    const bool moved =
        !(slot.place.position == shelter.place.position) || slot.id().empty();
    slot = shelter;
    return moved;
  });
  return snapshot_.shelters.at(shelter.id());
}

const MobileResource& KnowledgeBase::pair_mobile_resource(
    const EntityId& driver, const EntityId& vehicle, const Position& position,
    std::optional<EntityId> id) {
  const auto d = snapshot_.persons.find(driver);
  if (d == snapshot_.persons.end()) {
    throw Error(ErrorCode::kUnknownEntity, "unknown driver '" + driver.str() + "'");
  }
  const auto v = snapshot_.vehicles.find(vehicle);
  if (v == snapshot_.vehicles.end()) {
    throw Error(ErrorCode::kUnknownEntity,
                "unknown vehicle '" + vehicle.str() + "'");
  }
  if (d->second.role != PersonRole::kHumanResource) {
    throw Error(ErrorCode::kSchemaViolation,
                "person '" + driver.str() + "' is not a human resource");
  }
  const auto& license = v->second.required_license;
  if (!license.empty() && !d->second.licenses.contains(license)) {
    throw Error(ErrorCode::kLicenseMismatch,
                "driver '" + driver.str() + "' lacks license '" + license +
                    "' required by vehicle '" + vehicle.str() + "'");
  }
  for (const auto& [rid, mr] : snapshot_.mobile_resources) {
    if (mr.driver == driver || mr.vehicle == vehicle) {
      throw Error(ErrorCode::kAlreadyPaired,
                  "driver or vehicle already paired in '" + rid.str() + "'");
    }
  }
  const EntityId rid =
      id.value_or(EntityId(driver.str() + "+" + vehicle.str()));
  if (snapshot_.mobile_resources.contains(rid)) {
    throw Error(ErrorCode::kDuplicateId,
                "mobile resource '" + rid.str() + "' already exists");
  }
  mutate([&](KnowledgeSnapshot& s) {
    MobileResource m;
    m.id = rid;
    m.driver = driver;
    m.vehicle = vehicle;
    m.position = position;
    s.mobile_resources.emplace(rid, std::move(m));
    return true;
  });
  return snapshot_.mobile_resources.at(rid);
}

const MobileResource& KnowledgeBase::set_availability(
    const EntityId& resource, bool available, std::optional<Position> position,
    std::int64_t timestamp_ms) {
  if (!snapshot_.mobile_resources.contains(resource)) {
    throw Error(ErrorCode::kUnknownEntity,
                "unknown mobile resource '" + resource.str() + "'");
  }
  mutate([&](KnowledgeSnapshot& s) {
    auto& m = s.mobile_resources.at(resource);
    m.available = available;
    if (timestamp_ms != 0) m.updated_at_ms = timestamp_ms;
    if (position && !(*position == m.position)) {
      m.position = *position;
      return true;
    }
    return false;
  });
  return snapshot_.mobile_resources.at(resource);
}

void KnowledgeBase::set_committed(const EntityId& resource, bool committed) {
  if (!snapshot_.mobile_resources.contains(resource)) {
    throw Error(ErrorCode::kUnknownEntity,
                "unknown mobile resource '" + resource.str() + "'");
  }
  mutate([&](KnowledgeSnapshot& s) {
    s.mobile_resources.at(resource).committed = committed;
    return false;
  });
}

std::optional<EntityId> KnowledgeBase::find_pairing(
    const EntityId& driver, const EntityId& vehicle) const {
  for (const auto& [rid, mr] : snapshot_.mobile_resources) {
    if (mr.driver == driver && mr.vehicle == vehicle) return rid;
  }
  return std::nullopt;
}

std::vector<MobileResource> KnowledgeBase::query_available_resources() const {
  std::vector<MobileResource> out;
  for (const auto& [rid, mr] : snapshot_.mobile_resources) {
    if (mr.selectable()) out.push_back(mr);
  }
  return out;
}

}  // namespace evacrec
