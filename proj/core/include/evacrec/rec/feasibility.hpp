#pragma once

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/rec/plan.hpp"

namespace evacrec::rec {

enum class ConstraintKind {
  kCapacityExceeded,       // load > seats - 1
  kWheelchairSlots,        // wheelchair load > wheelchair slots
  kWheelchairExceedsLoad,  // wheelchair load > total load
  kSingleUse,              // resource in more than one assignment
  kDemandExceeded,         // rescue point receives more than it has
  kShelterCapacity,        // shelter receives more than it can take
  kTerrain,                // vehicle terrain not usable at the rescue point
  kUnreachable,            // a leg has no road path
  kEmptyLoad,              // assignment carries nobody
  kLegMismatch,            // leg time differs from the instance matrices
};

std::string_view to_string(ConstraintKind kind) noexcept;

struct Violation {
  ConstraintKind constraint;
  std::vector<EntityId> entities;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const noexcept { return violations.empty(); }
};

// Throws Error(kUnknownEntity) when the plan names an entity that is not part
// of the instance.
FeasibilityReport check_feasible(const ProblemInstance& instance,
                                 const RecommendationPlan& plan);

nlohmann::json to_json(const FeasibilityReport& report);

}  // namespace evacrec::rec
