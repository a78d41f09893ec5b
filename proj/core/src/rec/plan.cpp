#include "evacrec/rec/plan.hpp"

#include <algorithm>

namespace evacrec::rec {

RecommendationPlan finalize_plan(const ProblemInstance& instance,
                                 std::vector<Assignment> assignments,
                                 SolverKind solver) {
  std::sort(assignments.begin(), assignments.end(),
            [](const Assignment& a, const Assignment& b) {
              return a.resource < b.resource;
            });

  RecommendationPlan plan;
  plan.solver = solver;
  std::map<EntityId, Shortfall> loaded;
  for (const auto& a : assignments) {
    const Seconds leg = a.t_to_rp + a.t_rp_to_shelter;
    if (instance.time_objective == TimeObjective::kMakespan) {
      plan.objective.total_time = std::max(plan.objective.total_time, leg);
    } else {
      plan.objective.total_time += leg;
    }
    auto& l = loaded[a.rescue_point];
    l.evacuees_left += a.evacuees_loaded;
    l.wheelchair_left += a.wheelchair_loaded;
  }
  plan.objective.vehicles_used = static_cast<std::int64_t>(assignments.size());

  for (const auto& rp : instance.rescue_points) {
    const auto it = loaded.find(rp.id());
    const Shortfall carried = it == loaded.end() ? Shortfall{} : it->second;
    const Shortfall left{std::max(0, rp.evacuees - carried.evacuees_left),
                         std::max(0, rp.wheelchair_evacuees - carried.wheelchair_left)};
    if (left.evacuees_left > 0) {
      plan.uncovered.emplace(rp.id(), left);
      plan.objective.uncovered_weight +=
          static_cast<std::int64_t>(rp.priority) * left.evacuees_left;
    }
  }

  plan.assignments = std::move(assignments);
  if (plan.assignments.empty()) {
    plan.status = CoverageStatus::kEmpty;
  } else if (plan.uncovered.empty()) {
    plan.status = CoverageStatus::kFullCoverage;
  } else {
    plan.status = CoverageStatus::kPartialCoverage;
  }
  return plan;
}

std::string_view to_string(CoverageStatus status) noexcept {
  switch (status) {
    case CoverageStatus::kFullCoverage: return "FullCoverage";
    case CoverageStatus::kPartialCoverage: return "PartialCoverage";
    case CoverageStatus::kEmpty: return "Empty";
  }
  return "Empty";
}

std::string_view to_string(SolverKind kind) noexcept {
  return kind == SolverKind::kExact ? "exact" : "heuristic";
}

nlohmann::json to_json(const Objective& o) {
  return {{"uncovered_weight", o.uncovered_weight},
          {"total_time_s", o.total_time},
          {"vehicles_used", o.vehicles_used}};
}

nlohmann::json to_json(const RecommendationPlan& plan) {
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& a : plan.assignments) {
    assignments.push_back({{"resource", a.resource.str()},
                           {"rescue_point", a.rescue_point.str()},
                           {"shelter", a.shelter.str()},
                           {"evacuees_loaded", a.evacuees_loaded},
                           {"wheelchair_loaded", a.wheelchair_loaded},
                           {"t_to_rp_s", a.t_to_rp},
                           {"t_rp_to_shelter_s", a.t_rp_to_shelter}});
  }
  nlohmann::json uncovered = nlohmann::json::object();
  for (const auto& [rp, left] : plan.uncovered) {
    uncovered[rp.str()] = {{"evacuees_left", left.evacuees_left},
                           {"wheelchair_left", left.wheelchair_left}};
  }
  nlohmann::json j{{"assignments", std::move(assignments)},
                   {"objective", to_json(plan.objective)},
                   {"uncovered", std::move(uncovered)},
                   {"status", to_string(plan.status)},
                   {"solver", to_string(plan.solver)}};
  if (plan.lower_bound_s) j["lower_bound_s"] = *plan.lower_bound_s;
  return j;
}

}  // namespace evacrec::rec
