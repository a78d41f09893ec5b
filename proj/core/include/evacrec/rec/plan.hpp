#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/rec/instance.hpp"

namespace evacrec::rec {

struct Assignment {
  EntityId resource;
  EntityId rescue_point;
  EntityId shelter;
  int evacuees_loaded = 0;
  int wheelchair_loaded = 0;
  Seconds t_to_rp = 0;
  Seconds t_rp_to_shelter = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Compared lexicographically: uncovered priority-weighted demand first, then
// travel time, then vehicle count.
struct Objective {
  std::int64_t uncovered_weight = 0;
  Seconds total_time = 0;
  std::int64_t vehicles_used = 0;

  friend bool operator==(const Objective&, const Objective&) = default;
  friend auto operator<=>(const Objective&, const Objective&) = default;
};

struct Shortfall {
  int evacuees_left = 0;
  int wheelchair_left = 0;
  friend bool operator==(const Shortfall&, const Shortfall&) = default;
};

enum class CoverageStatus { kFullCoverage, kPartialCoverage, kEmpty };
enum class SolverKind { kExact, kHeuristic };

struct RecommendationPlan {
  std::vector<Assignment> assignments;  // sorted by resource id
  Objective objective;
  std::map<EntityId, Shortfall> uncovered;  // rescue points with evacuees left
  CoverageStatus status = CoverageStatus::kEmpty;
  SolverKind solver = SolverKind::kExact;
  // Only for heuristic plans: no plan whose uncovered weight is at most this
  // plan's can have a smaller time objective.
  std::optional<Seconds> lower_bound_s;

  friend bool operator==(const RecommendationPlan&,
                         const RecommendationPlan&) = default;
};

// Builds the derived fields (objective, uncovered, status) from a list of
// assignments and sorts assignments by resource id.
RecommendationPlan finalize_plan(const ProblemInstance& instance,
                                 std::vector<Assignment> assignments,
                                 SolverKind solver = SolverKind::kExact);

std::string_view to_string(CoverageStatus status) noexcept;
std::string_view to_string(SolverKind kind) noexcept;

nlohmann::json to_json(const Objective& objective);
// Plan wire format: assignments, objective, uncovered, status, solver and,
// for heuristic plans, lower_bound_s.
nlohmann::json to_json(const RecommendationPlan& plan);

}  // namespace evacrec::rec
