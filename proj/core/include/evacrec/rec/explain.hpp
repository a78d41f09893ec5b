#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/rec/plan.hpp"

namespace evacrec::rec {

struct AssignmentRationale {
  EntityId resource;
  EntityId rescue_point;
  EntityId shelter;
  Seconds t_to_rp = 0;
  Seconds t_rp_to_shelter = 0;
  int evacuees_loaded = 0;
  int wheelchair_loaded = 0;
  int ambulant_loaded = 0;
  int capacity = 0;
  int wheelchair_slots = 0;
  // Constraints that are tight for this trip: "vehicle_capacity",
  // "wheelchair_slots", "demand_met", "shelter_capacity".
  std::vector<std::string> binding;
};

enum class ShortageCause {
  kFleetCapacity,    // all seats together are fewer than all evacuees
  kEligibility,      // too few seats can reach this rescue point at all
  kWheelchairSlots,  // too few wheelchair slots can reach it
  kShelterCapacity,  // shelters cannot take everybody
  kTradeoff,         // seats went to higher-priority or cheaper demand
};

std::string_view to_string(ShortageCause cause) noexcept;

struct ShortageRecord {
  EntityId rescue_point;
  int priority = 0;
  int evacuees_left = 0;
  int wheelchair_left = 0;
  ShortageCause cause = ShortageCause::kTradeoff;
  int fleet_capacity = 0;         // seats over all resources in the instance
  int total_demand = 0;           // evacuees over all rescue points
  int eligible_capacity = 0;      // seats of resources that can serve this point
  int eligible_wheelchair_slots = 0;
  int shelter_capacity = 0;       // over all shelters
};

struct Explanation {
  std::vector<AssignmentRationale> assignments;
  std::vector<ShortageRecord> shortages;  // one per uncovered rescue point
};

Explanation explain(const ProblemInstance& instance, const RecommendationPlan& plan);

nlohmann::json to_json(const Explanation& explanation);

}  // namespace evacrec::rec
