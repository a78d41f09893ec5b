#include "evacrec/rec/feasibility.hpp"

#include "evacrec/error.hpp"
#include "rec/compiled_instance.hpp"
#include "rec/feasibility_indexed.hpp"

namespace evacrec::rec {

std::string_view to_string(ConstraintKind kind) noexcept {
  switch (kind) {
    case ConstraintKind::kCapacityExceeded: return "CapacityExceeded";
    case ConstraintKind::kWheelchairSlots: return "WheelchairSlots";
    case ConstraintKind::kWheelchairExceedsLoad: return "WheelchairExceedsLoad";
    case ConstraintKind::kSingleUse: return "SingleUse";
    case ConstraintKind::kDemandExceeded: return "DemandExceeded";
    case ConstraintKind::kShelterCapacity: return "ShelterCapacity";
    case ConstraintKind::kTerrain: return "Terrain";
    case ConstraintKind::kUnreachable: return "Unreachable";
    case ConstraintKind::kEmptyLoad: return "EmptyLoad";
    case ConstraintKind::kLegMismatch: return "LegMismatch";
  }
  return "Unknown";
}

namespace detail {

bool check_indexed(const CompiledInstance& ci,
                   std::span<const IndexedAssignment> plan,
                   std::vector<Violation>* out) {
  bool ok = true;
  auto report = [&](ConstraintKind kind, std::vector<EntityId> entities) {
    ok = false;
    if (out) out->push_back({kind, std::move(entities)});
    return out == nullptr;  // true: stop now
  };

  std::vector<int> uses(ci.n, 0);
  std::vector<int> rp_total(ci.m, 0), rp_wheel(ci.m, 0);
  std::vector<int> shelter_total(ci.k, 0);

  for (const auto& a : plan) {
    const auto& rid = ci.resource_id(a.r);
    if (++uses[a.r] == 2 && report(ConstraintKind::kSingleUse, {rid})) return false;
    if (a.evacuees <= 0 && report(ConstraintKind::kEmptyLoad, {rid})) return false;
    if (a.evacuees > ci.capacity[a.r] &&
        report(ConstraintKind::kCapacityExceeded, {rid})) {
      return false;
    }
    if (a.wheelchair > a.evacuees &&
        report(ConstraintKind::kWheelchairExceedsLoad, {rid})) {
      return false;
    }
    if (ci.enforce_wheelchair && a.wheelchair > ci.wheelchair_slots[a.r] &&
        report(ConstraintKind::kWheelchairSlots, {rid})) {
      return false;
    }
    if (!ci.terrain_ok[a.r * ci.m + a.p] &&
        report(ConstraintKind::kTerrain, {rid, ci.rp_id(a.p)})) {
      return false;
    }
    if (ci.to_rp(a.r, a.p) == kNoPath &&
        report(ConstraintKind::kUnreachable, {rid, ci.rp_id(a.p)})) {
      return false;
    }
    if (ci.to_shelter(a.p, a.s) == kNoPath &&
        report(ConstraintKind::kUnreachable, {ci.rp_id(a.p), ci.shelter_id(a.s)})) {
      return false;
    }
    rp_total[a.p] += a.evacuees;
    rp_wheel[a.p] += a.wheelchair;
    shelter_total[a.s] += a.evacuees;
  }

  for (int p = 0; p < ci.m; ++p) {
    const bool over = rp_total[p] > ci.evacuees[p] ||
                      rp_wheel[p] > ci.wheelchair[p] ||
                      rp_total[p] - rp_wheel[p] > ci.evacuees[p] - ci.wheelchair[p];
    if (over && report(ConstraintKind::kDemandExceeded, {ci.rp_id(p)})) return false;
  }
  if (ci.enforce_shelter_capacity) {
    for (int s = 0; s < ci.k; ++s) {
      if (shelter_total[s] > ci.shelter_capacity[s] &&
          report(ConstraintKind::kShelterCapacity, {ci.shelter_id(s)})) {
        return false;
      }
    }
  }
  return ok;
}

}  // namespace detail

FeasibilityReport check_feasible(const ProblemInstance& instance,
                                 const RecommendationPlan& plan) {
  const auto ci = detail::compile(instance);
  auto lookup = [](const std::unordered_map<EntityId, int>& index,
                   const EntityId& id, const char* kind) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw Error(ErrorCode::kUnknownEntity,
                  std::string("plan references unknown ") + kind + " '" + id.str() + "'");
    }
    return it->second;
  };

  FeasibilityReport report;
  std::vector<detail::IndexedAssignment> indexed;
  indexed.reserve(plan.assignments.size());
  for (const auto& a : plan.assignments) {
    detail::IndexedAssignment ia{lookup(ci.resource_index, a.resource, "resource"),
                                 lookup(ci.rp_index, a.rescue_point, "rescue point"),
                                 lookup(ci.shelter_index, a.shelter, "shelter"),
                                 a.evacuees_loaded, a.wheelchair_loaded};
    const Seconds leg1 = ci.to_rp(ia.r, ia.p);
    const Seconds leg2 = ci.to_shelter(ia.p, ia.s);
    if ((leg1 != detail::kNoPath && leg1 != a.t_to_rp) ||
        (leg2 != detail::kNoPath && leg2 != a.t_rp_to_shelter)) {
      report.violations.push_back({ConstraintKind::kLegMismatch, {a.resource}});
    }
    indexed.push_back(ia);
  }
  detail::check_indexed(ci, indexed, &report.violations);
  return report;
}

nlohmann::json to_json(const FeasibilityReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    nlohmann::json entities = nlohmann::json::array();
    for (const auto& e : v.entities) entities.push_back(e.str());
    violations.push_back({{"constraint", to_string(v.constraint)},
                          {"entities", std::move(entities)}});
  }
  return {{"feasible", report.feasible()}, {"violations", std::move(violations)}};
}

}  // namespace evacrec::rec
