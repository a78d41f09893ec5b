#include "rec/compiled_instance.hpp"

#include <algorithm>
#include <numeric>

#include "evacrec/error.hpp"

namespace evacrec::rec::detail {

namespace {

template <typename T, typename IdOf>
std::vector<int> sorted_order(const std::vector<T>& items, IdOf id_of,
                              std::unordered_map<EntityId, int>& index,
                              const char* kind) {
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return id_of(items[a]) < id_of(items[b]); });
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    if (!index.emplace(id_of(items[order[i]]), i).second) {
      throw Error(ErrorCode::kSchemaViolation,
                  std::string("duplicate ") + kind + " id '" +
                      id_of(items[order[i]]).str() + "' in instance");
    }
  }
  return order;
}

std::vector<std::size_t> column_map(const road::TravelTimeMatrix& matrix,
                                    const std::vector<EntityId>& wanted,
                                    const char* what) {
  std::unordered_map<EntityId, std::size_t> cols;
  for (std::size_t c = 0; c < matrix.cols(); ++c) cols.emplace(matrix.destinations()[c], c);
  std::vector<std::size_t> out;
  for (const auto& id : wanted) {
    auto it = cols.find(id);
    if (it == cols.end()) {
      throw Error(ErrorCode::kMatrixIncomplete,
                  std::string(what) + " matrix has no column for '" + id.str() + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::size_t> row_map(const road::TravelTimeMatrix& matrix,
                                 const std::vector<EntityId>& wanted,
                                 const char* what) {
  std::unordered_map<EntityId, std::size_t> rows;
  for (std::size_t r = 0; r < matrix.rows(); ++r) rows.emplace(matrix.origins()[r], r);
  std::vector<std::size_t> out;
  for (const auto& id : wanted) {
    auto it = rows.find(id);
    if (it == rows.end()) {
      throw Error(ErrorCode::kMatrixIncomplete,
                  std::string(what) + " matrix has no row for '" + id.str() + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

const EntityId& CompiledInstance::resource_id(int r) const {
  return source->resources[resource_src[r]].id;
}
const EntityId& CompiledInstance::rp_id(int p) const {
  return source->rescue_points[rp_src[p]].id();
}
const EntityId& CompiledInstance::shelter_id(int s) const {
  return source->shelters[shelter_src[s]].id();
}

CompiledInstance compile(const ProblemInstance& inst) {
  CompiledInstance ci;
  ci.source = &inst;
  ci.resource_src = sorted_order(
      inst.resources, [](const FleetMember& f) -> const EntityId& { return f.id; },
      ci.resource_index, "resource");
  ci.rp_src = sorted_order(
      inst.rescue_points,
      [](const RescuePoint& rp) -> const EntityId& { return rp.id(); }, ci.rp_index,
      "rescue point");
  ci.shelter_src = sorted_order(
      inst.shelters, [](const Shelter& s) -> const EntityId& { return s.id(); },
      ci.shelter_index, "shelter");
  ci.n = static_cast<int>(inst.resources.size());
  ci.m = static_cast<int>(inst.rescue_points.size());
  ci.k = static_cast<int>(inst.shelters.size());
  ci.enforce_wheelchair = inst.constraints.enforce_wheelchair;
  ci.enforce_shelter_capacity = inst.constraints.enforce_shelter_capacity;
  ci.time_objective = inst.time_objective;

  std::vector<EntityId> r_ids, p_ids, s_ids;
  for (int r = 0; r < ci.n; ++r) {
    const auto& f = inst.resources[ci.resource_src[r]];
    r_ids.push_back(f.id);
    ci.capacity.push_back(std::max(0, f.capacity()));
    ci.wheelchair_slots.push_back(std::clamp(f.vehicle.wheelchair_slots, 0, std::max(0, f.capacity())));
  }
  for (int p = 0; p < ci.m; ++p) {
    const auto& rp = inst.rescue_points[ci.rp_src[p]];
    p_ids.push_back(rp.id());
    ci.evacuees.push_back(rp.evacuees);
    ci.wheelchair.push_back(rp.wheelchair_evacuees);
    ci.priority.push_back(rp.priority);
  }
  for (int s = 0; s < ci.k; ++s) {
    const auto& sh = inst.shelters[ci.shelter_src[s]];
    s_ids.push_back(sh.id());
    ci.shelter_capacity.push_back(sh.capacity);
  }

  ci.t_rp.assign(static_cast<std::size_t>(ci.n) * ci.m, kNoPath);
  ci.t_ps.assign(static_cast<std::size_t>(ci.m) * ci.k, kNoPath);
  ci.terrain_ok.assign(static_cast<std::size_t>(ci.n) * ci.m, 1);

  if (ci.n > 0 && ci.m > 0) {
    const auto rows = row_map(inst.times_to_rp, r_ids, "resource-to-rescue-point");
    const auto cols = column_map(inst.times_to_rp, p_ids, "resource-to-rescue-point");
    for (int r = 0; r < ci.n; ++r) {
      for (int p = 0; p < ci.m; ++p) {
        if (auto t = inst.times_to_rp.at(rows[r], cols[p])) ci.t_rp[r * ci.m + p] = *t;
      }
    }
  }
  if (ci.m > 0 && ci.k > 0) {
    const auto rows = row_map(inst.times_rp_to_shelter, p_ids, "rescue-point-to-shelter");
    const auto cols = column_map(inst.times_rp_to_shelter, s_ids, "rescue-point-to-shelter");
    for (int p = 0; p < ci.m; ++p) {
      for (int s = 0; s < ci.k; ++s) {
        if (auto t = inst.times_rp_to_shelter.at(rows[p], cols[s])) {
          ci.t_ps[p * ci.k + s] = *t;
        }
      }
    }
  }
  if (inst.constraints.enforce_terrain) {
    for (int p = 0; p < ci.m; ++p) {
      const auto terrains = inst.crisis.terrains_for(p_ids[p]);
      for (int r = 0; r < ci.n; ++r) {
        const auto& v = inst.resources[ci.resource_src[r]].vehicle;
        ci.terrain_ok[r * ci.m + p] = terrains.contains(v.terrain) ? 1 : 0;
      }
    }
  }
  return ci;
}

std::vector<Assignment> materialize(const CompiledInstance& ci,
                                    const std::vector<IndexedAssignment>& plan) {
  std::vector<Assignment> out;
  out.reserve(plan.size());
  for (const auto& a : plan) {
    out.push_back(Assignment{ci.resource_id(a.r), ci.rp_id(a.p), ci.shelter_id(a.s),
                             a.evacuees, a.wheelchair, ci.to_rp(a.r, a.p),
                             ci.to_shelter(a.p, a.s)});
  }
  return out;
}

}  // namespace evacrec::rec::detail
