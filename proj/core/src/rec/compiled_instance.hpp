#pragma once

// Index-based view of a ProblemInstance. Entities are re-indexed in id order,
// so comparing indices is the same as comparing ids; every deterministic
// tie-break downstream relies on that.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "evacrec/rec/instance.hpp"
#include "evacrec/rec/plan.hpp"

namespace evacrec::rec::detail {

inline constexpr Seconds kNoPath = -1;

struct CompiledInstance {
  const ProblemInstance* source = nullptr;
  int n = 0;  // resources
  int m = 0;  // rescue points
  int k = 0;  // shelters

  // Position in source->resources / rescue_points / shelters.
  std::vector<int> resource_src, rp_src, shelter_src;

  std::vector<int> capacity, wheelchair_slots;
  std::vector<int> evacuees, wheelchair, priority;
  std::vector<int> shelter_capacity;

  std::vector<Seconds> t_rp;  // n x m, kNoPath when unreachable
  std::vector<Seconds> t_ps;  // m x k
  std::vector<char> terrain_ok;  // n x m, all true when not enforced

  bool enforce_wheelchair = true;
  bool enforce_shelter_capacity = true;
  TimeObjective time_objective = TimeObjective::kSum;

  std::unordered_map<EntityId, int> resource_index, rp_index, shelter_index;

  Seconds to_rp(int r, int p) const { return t_rp[r * m + p]; }
  Seconds to_shelter(int p, int s) const { return t_ps[p * k + s]; }

  // Triple can appear in a plan: positive capacity, terrain, both legs finite.
  bool admissible(int r, int p, int s) const {
    return capacity[r] > 0 && terrain_ok[r * m + p] && to_rp(r, p) != kNoPath &&
           to_shelter(p, s) != kNoPath;
  }

  const EntityId& resource_id(int r) const;
  const EntityId& rp_id(int p) const;
  const EntityId& shelter_id(int s) const;

  Seconds aggregate(Seconds acc, Seconds leg) const {
    return time_objective == TimeObjective::kSum ? acc + leg
                                                 : (leg > acc ? leg : acc);
  }
};

// Throws Error(kSchemaViolation) for duplicate ids and Error(kMatrixIncomplete)
// when a matrix lacks a row or column the instance needs.
CompiledInstance compile(const ProblemInstance& instance);

// One (resource, rescue point, shelter) decision with its loads.
struct IndexedAssignment {
  int r = 0;
  int p = 0;
  int s = 0;
  int evacuees = 0;
  int wheelchair = 0;
};

std::vector<Assignment> materialize(const CompiledInstance& ci,
                                    const std::vector<IndexedAssignment>& plan);

}  // namespace evacrec::rec::detail
