#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/ids.hpp"
#include "evacrec/kb/model.hpp"
#include "evacrec/road/shortest_path.hpp"

namespace evacrec::road {

struct Waypoint {
  EntityId id;
  Position position;
};

// Dense origin x destination travel times in seconds, row-major.
// Entries are nullopt where no directed path exists.
class TravelTimeMatrix {
 public:
  TravelTimeMatrix() = default;
  TravelTimeMatrix(std::vector<EntityId> origins,
                   std::vector<EntityId> destinations,
                   std::vector<TravelTime> entries);

  const std::vector<EntityId>& origins() const noexcept { return origins_; }
  const std::vector<EntityId>& destinations() const noexcept { return destinations_; }
  std::size_t rows() const noexcept { return origins_.size(); }
  std::size_t cols() const noexcept { return destinations_.size(); }

  TravelTime at(std::size_t row, std::size_t col) const {
    return entries_[row * destinations_.size() + col];
  }
  TravelTime& at(std::size_t row, std::size_t col) {
    return entries_[row * destinations_.size() + col];
  }

  std::optional<std::size_t> origin_index(const EntityId& id) const;
  std::optional<std::size_t> destination_index(const EntityId& id) const;

  // Sub-matrix restricted to the given origins, in the given order.
  // Throws Error(kMatrixIncomplete) for an origin that is not present.
  TravelTimeMatrix select_origins(std::span<const EntityId> origins) const;

  friend bool operator==(const TravelTimeMatrix&, const TravelTimeMatrix&) = default;

 private:
  std::vector<EntityId> origins_;
  std::vector<EntityId> destinations_;
  std::vector<TravelTime> entries_;
};

// One single-source run per distinct origin node. Entries equal pairwise
// shortest_time() between the snapped nodes.
TravelTimeMatrix build_matrix(const RoadGraph& graph,
                              std::span<const Waypoint> origins,
                              std::span<const Waypoint> destinations);

// {"origins": [...], "destinations": [...], "seconds": [[int|null]]}
nlohmann::json to_json(const TravelTimeMatrix& matrix);
// Throws Error(kSchemaViolation).
TravelTimeMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace evacrec::road
