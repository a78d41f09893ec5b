#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "evacrec/rec/plan.hpp"

namespace evacrec::rec {

// Brute force over every plan, for cross-checking the solver on small
// instances.

inline constexpr int kOracleMaxResources = 6;
inline constexpr int kOracleMaxRescuePoints = 4;
inline constexpr int kOracleMaxShelters = 3;

struct EnumerationStats {
  std::uint64_t candidates = 0;  // (m * k + 1) ^ n
  std::uint64_t feasible = 0;
};

// Calls `visit` for every feasible plan. Loads come from load_rule and
// feasibility from check_feasible's rules. Throws Error(kInstanceTooLarge)
// beyond the limits above.
EnumerationStats for_each_feasible_plan(
    const ProblemInstance& instance,
    const std::function<void(const RecommendationPlan&)>& visit);

std::vector<RecommendationPlan> enumerate_all(const ProblemInstance& instance);

// True when `a` beats `b`: objective first, then the sorted list of
// (resource, rescue point, shelter) ids.
bool plan_precedes(const RecommendationPlan& a, const RecommendationPlan& b);

struct OracleResult {
  RecommendationPlan best;
  std::uint64_t optimal_count = 0;  // plans sharing the best objective
  EnumerationStats stats;
};

OracleResult oracle_optimum(const ProblemInstance& instance);

}  // namespace evacrec::rec
