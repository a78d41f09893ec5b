#include "evacrec/rec/explain.hpp"

#include <map>

#include "rec/compiled_instance.hpp"

namespace evacrec::rec {

std::string_view to_string(ShortageCause cause) noexcept {
  switch (cause) {
    case ShortageCause::kFleetCapacity: return "fleet_capacity";
    case ShortageCause::kEligibility: return "eligibility";
    case ShortageCause::kWheelchairSlots: return "wheelchair_slots";
    case ShortageCause::kShelterCapacity: return "shelter_capacity";
    case ShortageCause::kTradeoff: return "tradeoff";
  }
  return "tradeoff";
}

Explanation explain(const ProblemInstance& instance, const RecommendationPlan& plan) {
  const auto ci = detail::compile(instance);
  Explanation out;

  std::map<EntityId, int> shelter_intake;
  for (const auto& a : plan.assignments) shelter_intake[a.shelter] += a.evacuees_loaded;

  int fleet_capacity = 0;
  for (int r = 0; r < ci.n; ++r) fleet_capacity += ci.capacity[r];
  int total_demand = 0;
  for (int p = 0; p < ci.m; ++p) total_demand += ci.evacuees[p];
  int shelter_capacity = 0;
  for (int s = 0; s < ci.k; ++s) shelter_capacity += ci.shelter_capacity[s];

  for (const auto& a : plan.assignments) {
    AssignmentRationale why;
    why.resource = a.resource;
    why.rescue_point = a.rescue_point;
    why.shelter = a.shelter;
    why.t_to_rp = a.t_to_rp;
    why.t_rp_to_shelter = a.t_rp_to_shelter;
    why.evacuees_loaded = a.evacuees_loaded;
    why.wheelchair_loaded = a.wheelchair_loaded;
    why.ambulant_loaded = a.evacuees_loaded - a.wheelchair_loaded;
    if (auto it = ci.resource_index.find(a.resource); it != ci.resource_index.end()) {
      why.capacity = ci.capacity[it->second];
      why.wheelchair_slots = ci.wheelchair_slots[it->second];
    }
    if (why.capacity > 0 && a.evacuees_loaded >= why.capacity) {
      why.binding.emplace_back("vehicle_capacity");
    }
    if (why.wheelchair_slots > 0 && a.wheelchair_loaded >= why.wheelchair_slots) {
      why.binding.emplace_back("wheelchair_slots");
    }
    if (!plan.uncovered.contains(a.rescue_point)) why.binding.emplace_back("demand_met");
    if (auto it = ci.shelter_index.find(a.shelter);
        ci.enforce_shelter_capacity && it != ci.shelter_index.end() &&
        shelter_intake[a.shelter] >= ci.shelter_capacity[it->second]) {
      why.binding.emplace_back("shelter_capacity");
    }
    out.assignments.push_back(std::move(why));
  }

  for (const auto& [rp, left] : plan.uncovered) {
    const auto it = ci.rp_index.find(rp);
    if (it == ci.rp_index.end()) continue;
    const int p = it->second;
    ShortageRecord rec;
    rec.rescue_point = rp;
    rec.priority = ci.priority[p];
    rec.evacuees_left = left.evacuees_left;
    rec.wheelchair_left = left.wheelchair_left;
    rec.fleet_capacity = fleet_capacity;
    rec.total_demand = total_demand;
    rec.shelter_capacity = shelter_capacity;
    for (int r = 0; r < ci.n; ++r) {
      bool eligible = false;
      for (int s = 0; s < ci.k && !eligible; ++s) eligible = ci.admissible(r, p, s);
      if (eligible) {
        rec.eligible_capacity += ci.capacity[r];
        rec.eligible_wheelchair_slots += ci.wheelchair_slots[r];
      }
    }
    if (fleet_capacity < total_demand) {
      rec.cause = ShortageCause::kFleetCapacity;
    } else if (rec.eligible_capacity < ci.evacuees[p]) {
      rec.cause = ShortageCause::kEligibility;
    } else if (ci.enforce_wheelchair && left.wheelchair_left > 0 &&
               rec.eligible_wheelchair_slots < ci.wheelchair[p]) {
      rec.cause = ShortageCause::kWheelchairSlots;
    } else if (ci.enforce_shelter_capacity && shelter_capacity < total_demand) {
      rec.cause = ShortageCause::kShelterCapacity;
    } else {
      rec.cause = ShortageCause::kTradeoff;
    }
    out.shortages.push_back(std::move(rec));
  }
  return out;
}

nlohmann::json to_json(const Explanation& e) {
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& a : e.assignments) {
    assignments.push_back({{"resource", a.resource.str()},
                           {"rescue_point", a.rescue_point.str()},
                           {"shelter", a.shelter.str()},
                           {"t_to_rp_s", a.t_to_rp},
                           {"t_rp_to_shelter_s", a.t_rp_to_shelter},
                           {"evacuees_loaded", a.evacuees_loaded},
                           {"wheelchair_loaded", a.wheelchair_loaded},
                           {"ambulant_loaded", a.ambulant_loaded},
                           {"capacity", a.capacity},
                           {"wheelchair_slots", a.wheelchair_slots},
                           {"binding", a.binding}});
  }
  nlohmann::json shortages = nlohmann::json::array();
  for (const auto& s : e.shortages) {
    shortages.push_back({{"rescue_point", s.rescue_point.str()},
                         {"priority", s.priority},
                         {"evacuees_left", s.evacuees_left},
                         {"wheelchair_left", s.wheelchair_left},
                         {"cause", to_string(s.cause)},
                         {"fleet_capacity", s.fleet_capacity},
                         {"total_demand", s.total_demand},
                         {"eligible_capacity", s.eligible_capacity},
                         {"eligible_wheelchair_slots", s.eligible_wheelchair_slots},
                         {"shelter_capacity", s.shelter_capacity}});
  }
  return {{"assignments", std::move(assignments)}, {"shortages", std::move(shortages)}};
}

}  // namespace evacrec::rec
