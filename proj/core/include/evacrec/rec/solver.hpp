#pragma once

#include "evacrec/rec/plan.hpp"

namespace evacrec::rec {

struct SolverOptions {
  // Instances with at most this many resources are solved exactly.
  int exact_bound = 12;
};

// Returns the best plan under the lexicographic objective. Ties are broken by
// the smallest sorted list of (resource, rescue point, shelter) ids, so the
// result is a pure function of the instance.
//
// Above `exact_bound` resources a greedy plan is returned with solver ==
// kHeuristic and lower_bound_s set.
RecommendationPlan solve(const ProblemInstance& instance, const SolverOptions& options = {});

// The greedy plan on its own, whatever the instance size.
RecommendationPlan solve_heuristic(const ProblemInstance& instance);

}  // namespace evacrec::rec
