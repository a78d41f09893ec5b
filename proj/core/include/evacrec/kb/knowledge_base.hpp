#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/kb/model.hpp"

namespace evacrec {

enum class EntityKind { kPerson, kVehicle, kMobileResource, kRescuePoint, kShelter, kCrisis };

// Schema-validated store of all crisis entities. Every mutation leaves the
// snapshot valid (schema, invariants, referential closure) or throws and
// leaves it untouched.
//
// Not internally synchronized: callers that share a KnowledgeBase serialize
// writers and hand readers a copy of snapshot().
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  // Throws Error(kSchemaViolation) if the snapshot is invalid.
  explicit KnowledgeBase(KnowledgeSnapshot snapshot);

  const KnowledgeSnapshot& snapshot() const noexcept { return snapshot_; }

  // Insert-or-confirm: identical repeated calls succeed, a different entity
  // under an existing id throws Error(kDuplicateId).
  EntityId upsert_entity(EntityKind kind, const nlohmann::json& fields);
  EntityId upsert(const Person& person);
  EntityId upsert(const Vehicle& vehicle);
  EntityId upsert(const RescuePoint& rescue_point);
  EntityId upsert(const Shelter& shelter);
  EntityId upsert(const MobileResource& resource);
  void set_crisis(const Crisis& crisis);

  // Replace semantics for the decision-maker edit paths.
  const RescuePoint& put_rescue_point(const RescuePoint& rescue_point);
  const Shelter& put_shelter(const Shelter& shelter);

  // Pairs a human-resource driver with a vehicle. The resource id defaults to
  // "<driver>+<vehicle>".
  const MobileResource& pair_mobile_resource(
      const EntityId& driver, const EntityId& vehicle, const Position& position,
      std::optional<EntityId> id = std::nullopt);

  const MobileResource& set_availability(
      const EntityId& resource, bool available,
      std::optional<Position> position = std::nullopt,
      std::int64_t timestamp_ms = 0);

  void set_committed(const EntityId& resource, bool committed);

  std::optional<EntityId> find_pairing(const EntityId& driver,
                                       const EntityId& vehicle) const;

  // Resources with available=true and committed=false, sorted by id.
  std::vector<MobileResource> query_available_resources() const;

  // Bumped whenever any place or resource position changes or a resource is
  // added; travel-time caches key on it.
  std::uint64_t positions_revision() const noexcept { return positions_revision_; }
  // Bumped on every successful mutation.
  std::uint64_t revision() const noexcept { return revision_; }

 private:
  template <typename Mutator>
  void mutate(Mutator&& mutator);

  KnowledgeSnapshot snapshot_;
  std::uint64_t revision_ = 0;
  std::uint64_t positions_revision_ = 0;
};

}  // namespace evacrec
