#include "evacrec/rec/oracle.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "evacrec/error.hpp"
#include "evacrec/rec/load_rule.hpp"
#include "rec/compiled_instance.hpp"
#include "rec/feasibility_indexed.hpp"

namespace evacrec::rec {

EnumerationStats for_each_feasible_plan(
    const ProblemInstance& instance,
    const std::function<void(const RecommendationPlan&)>& visit) {
  if (static_cast<int>(instance.resources.size()) > kOracleMaxResources ||
      static_cast<int>(instance.rescue_points.size()) > kOracleMaxRescuePoints ||
      static_cast<int>(instance.shelters.size()) > kOracleMaxShelters) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "oracle supports at most " + std::to_string(kOracleMaxResources) +
                    " resources, " + std::to_string(kOracleMaxRescuePoints) +
                    " rescue points and " + std::to_string(kOracleMaxShelters) +
                    " shelters");
  }
  const auto ci = detail::compile(instance);
  const int base = ci.m * ci.k + 1;

  std::vector<std::string_view> ids;
  for (int r = 0; r < ci.n; ++r) ids.emplace_back(ci.resource_id(r).str());

  EnumerationStats stats;
  // digit 0: unused; digit d > 0: rescue point (d-1) / k, shelter (d-1) % k.
  std::vector<int> digit(ci.n, 0);
  std::vector<LoadCandidate> group;
  std::vector<int> group_r;
  std::vector<detail::IndexedAssignment> plan;
  while (true) {
    ++stats.candidates;
    plan.clear();
    for (int p = 0; p < ci.m; ++p) {
      group.clear();
      group_r.clear();
      for (int r = 0; r < ci.n; ++r) {
        if (digit[r] == 0 || (digit[r] - 1) / ci.k != p) continue;
        const auto& v = instance.resources[ci.resource_src[r]].vehicle;
        group.push_back({ids[r], v.effective_capacity(), v.wheelchair_slots, ci.to_rp(r, p)});
        group_r.push_back(r);
      }
      if (group.empty()) continue;
      const auto loads = load_rule(group, {ci.evacuees[p], ci.wheelchair[p]},
                                   ci.enforce_wheelchair);
      for (std::size_t i = 0; i < group.size(); ++i) {
        const int r = group_r[i];
        plan.push_back({r, p, (digit[r] - 1) % ci.k, loads[i].evacuees, loads[i].wheelchair});
      }
    }
    if (detail::check_indexed(ci, plan, nullptr)) {
      ++stats.feasible;
      visit(finalize_plan(instance, detail::materialize(ci, plan), SolverKind::kExact));
    }

    int pos = 0;
    while (pos < ci.n && ++digit[pos] == base) digit[pos++] = 0;
    if (pos == ci.n) break;
  }
  return stats;
}

std::vector<RecommendationPlan> enumerate_all(const ProblemInstance& instance) {
  std::vector<RecommendationPlan> out;
  for_each_feasible_plan(instance, [&](const RecommendationPlan& p) { out.push_back(p); });
  return out;
}

bool plan_precedes(const RecommendationPlan& a, const RecommendationPlan& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  auto triples = [](const RecommendationPlan& p) {
    std::vector<std::tuple<std::string, std::string, std::string>> t;
    for (const auto& x : p.assignments) {
      t.emplace_back(x.resource.str(), x.rescue_point.str(), x.shelter.str());
    }
    std::sort(t.begin(), t.end());
    return t;
  };
  return triples(a) < triples(b);
}

OracleResult oracle_optimum(const ProblemInstance& instance) {
  OracleResult result;
  bool have = false;
  result.stats = for_each_feasible_plan(instance, [&](const RecommendationPlan& p) {
    if (!have || p.objective < result.best.objective) {
      result.best = p;
      result.optimal_count = 1;
      have = true;
    } else if (p.objective == result.best.objective) {
      ++result.optimal_count;
      if (plan_precedes(p, result.best)) result.best = p;
    }
  });
  return result;
}

}  // namespace evacrec::rec
