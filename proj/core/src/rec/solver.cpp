#include "evacrec/rec/solver.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "rec/compiled_instance.hpp"

namespace evacrec::rec {

namespace {

using detail::CompiledInstance;
using detail::IndexedAssignment;
using detail::kNoPath;

constexpr Seconds kInf = std::numeric_limits<Seconds>::max() / 4;
constexpr std::int64_t kUnreachableCount = std::numeric_limits<std::int64_t>::max() / 4;

// Per rescue point membership with loads kept equal to what the load rule
// produces for the current members.
class LoadState {
 public:
  explicit LoadState(const CompiledInstance& ci)
      : ci_(ci),
        members_(ci.m),
        load_(ci.n, 0),
        wheel_(ci.n, 0),
        loaded_(ci.m, 0),
        wheel_loaded_(ci.m, 0) {
    for (int p = 0; p < ci.m; ++p) {
      uncovered_ += static_cast<std::int64_t>(ci.priority[p]) * ci.evacuees[p];
    }
  }

  // Returns false when some member of p ends up carrying nobody. The caller
  // must still call remove() to undo.
  bool add(int r, int p) {
    auto& mem = members_[p];
    const auto pos = std::lower_bound(mem.begin(), mem.end(), r, [&](int a, int b) {
      return std::pair(ci_.to_rp(a, p), a) < std::pair(ci_.to_rp(b, p), b);
    });
    mem.insert(pos, r);
    return relax(p);
  }

  void remove(int r, int p) {
    auto& mem = members_[p];
    mem.erase(std::find(mem.begin(), mem.end(), r));
    load_[r] = 0;
    wheel_[r] = 0;
    relax(p);
  }

  int load(int r) const { return load_[r]; }
  int wheel(int r) const { return wheel_[r]; }
  int loaded(int p) const { return loaded_[p]; }
  int deficit(int p) const { return ci_.evacuees[p] - loaded_[p]; }
  int total_loaded() const { return total_loaded_; }
  std::int64_t uncovered() const { return uncovered_; }

 private:
  bool relax(int p) {
    const auto& mem = members_[p];
    int wheel_left = ci_.wheelchair[p];
    for (int r : mem) {
      const int take = std::min(ci_.wheelchair_slots[r], wheel_left);
      wheel_[r] = take;
      load_[r] = take;
      wheel_left -= take;
    }
    int overflow_left = ci_.enforce_wheelchair ? 0 : wheel_left;
    int ambulant_left = ci_.evacuees[p] - ci_.wheelchair[p];
    int total = 0;
    int wheel_total = 0;
    bool positive = true;
    for (int r : mem) {
      int free = ci_.capacity[r] - load_[r];
      const int overflow = std::min(free, overflow_left);
      overflow_left -= overflow;
      wheel_[r] += overflow;
      load_[r] += overflow;
      free -= overflow;
      const int ambulant = std::min(free, ambulant_left);
      ambulant_left -= ambulant;
      load_[r] += ambulant;
      total += load_[r];
      wheel_total += wheel_[r];
      positive = positive && load_[r] > 0;
    }
    uncovered_ -= static_cast<std::int64_t>(ci_.priority[p]) * (total - loaded_[p]);
    total_loaded_ += total - loaded_[p];
    loaded_[p] = total;
    wheel_loaded_[p] = wheel_total;
    return positive;
  }

  const CompiledInstance& ci_;
  std::vector<std::vector<int>> members_;  // sorted by (t_rp, r)
  std::vector<int> load_, wheel_;
  std::vector<int> loaded_, wheel_loaded_;
  int total_loaded_ = 0;
  std::int64_t uncovered_ = 0;
};

// Full comparison key of a plan, including the id tie-break.
struct Key {
  Objective objective;
  std::vector<std::array<int, 3>> triples;  // (r, p, s), r ascending
};

bool better(const Key& a, const Key& b) {
  return std::tie(a.objective, a.triples) < std::tie(b.objective, b.triples);
}

Key key_of(const CompiledInstance& ci, const std::vector<IndexedAssignment>& plan) {
  Key key;
  std::vector<int> loaded(ci.m, 0);
  for (const auto& a : plan) {
    key.objective.total_time = ci.aggregate(key.objective.total_time,
                                            ci.to_rp(a.r, a.p) + ci.to_shelter(a.p, a.s));
    loaded[a.p] += a.evacuees;
    key.triples.push_back({a.r, a.p, a.s});
  }
  for (int p = 0; p < ci.m; ++p) {
    key.objective.uncovered_weight +=
        static_cast<std::int64_t>(ci.priority[p]) * std::max(0, ci.evacuees[p] - loaded[p]);
  }
  key.objective.vehicles_used = static_cast<std::int64_t>(plan.size());
  return key;
}

// Leg data shared by the heuristic and the exact search.
struct Legs {
  std::vector<Seconds> min_ps;   // per rescue point, kNoPath if no shelter reachable
  std::vector<Seconds> leg_min;  // n x m, kNoPath if the pair is not admissible
  std::vector<int> rp_by_priority;

  explicit Legs(const CompiledInstance& ci)
      : min_ps(ci.m, kNoPath), leg_min(static_cast<std::size_t>(ci.n) * ci.m, kNoPath) {
    for (int p = 0; p < ci.m; ++p) {
      for (int s = 0; s < ci.k; ++s) {
        const Seconds t = ci.to_shelter(p, s);
        if (t != kNoPath && (min_ps[p] == kNoPath || t < min_ps[p])) min_ps[p] = t;
      }
    }
    for (int r = 0; r < ci.n; ++r) {
      for (int p = 0; p < ci.m; ++p) {
        if (ci.capacity[r] > 0 && ci.terrain_ok[r * ci.m + p] &&
            ci.to_rp(r, p) != kNoPath && min_ps[p] != kNoPath) {
          leg_min[r * ci.m + p] = ci.to_rp(r, p) + min_ps[p];
        }
      }
    }
    rp_by_priority.resize(ci.m);
    std::iota(rp_by_priority.begin(), rp_by_priority.end(), 0);
    std::stable_sort(rp_by_priority.begin(), rp_by_priority.end(),
                     [&](int a, int b) { return ci.priority[a] > ci.priority[b]; });
  }
};

// A resource still free to be sent somewhere: the most weight it can remove
// and the cheapest leg that could remove it.
struct Relief {
  std::int64_t value = 0;
  Seconds cost = 0;
  int capacity = 0;
};

// Least extra time needed to remove `needed` weight with the given reliefs,
// treating them as divisible. kInf when they cannot remove that much.
Seconds min_extra_time(std::vector<Relief>& items, std::int64_t needed,
                       TimeObjective objective) {
  if (needed <= 0) return 0;
  std::int64_t total = 0;
  for (const auto& it : items) total += it.value;
  if (total < needed) return kInf;
  if (objective == TimeObjective::kMakespan) {
    Seconds best = kInf;
    for (const auto& it : items) best = std::min(best, it.cost);
    return best;
  }
  std::sort(items.begin(), items.end(), [](const Relief& a, const Relief& b) {
    return a.cost * b.value < b.cost * a.value;
  });
  Seconds time = 0;
  std::int64_t left = needed;
  for (const auto& it : items) {
    if (it.value >= left) {
      time += (it.cost * left + it.value - 1) / it.value;
      return time;
    }
    time += it.cost;
    left -= it.value;
  }
  return kInf;
}

// Fewest reliefs whose values reach `needed`.
std::int64_t min_extra_vehicles(std::vector<Relief>& items, std::int64_t needed) {
  if (needed <= 0) return 0;
  std::sort(items.begin(), items.end(),
            [](const Relief& a, const Relief& b) { return a.value > b.value; });
  std::int64_t count = 0;
  for (const auto& it : items) {
    needed -= it.value;
    ++count;
    if (needed <= 0) return count;
  }
  return kUnreachableCount;
}

Relief relief_of(const CompiledInstance& ci, const Legs& legs, const LoadState& state,
                 int r) {
  Relief out{0, kInf, ci.capacity[r]};
  int pmax = 0;
  for (int p = 0; p < ci.m; ++p) {
    const Seconds leg = legs.leg_min[r * ci.m + p];
    if (leg == kNoPath || state.deficit(p) <= 0) continue;
    pmax = std::max(pmax, ci.priority[p]);
    out.cost = std::min(out.cost, leg);
  }
  out.value = static_cast<std::int64_t>(ci.capacity[r]) * pmax;
  return out;
}

int total_shelter_capacity(const CompiledInstance& ci) {
  return std::accumulate(ci.shelter_capacity.begin(), ci.shelter_capacity.end(), 0);
}

// Greedy: rescue points by descending priority; each takes the cheapest
// remaining (resource, shelter) pair that keeps every member loaded and every
// shelter within capacity, until its demand is met or nothing fits.
std::vector<IndexedAssignment> greedy(const CompiledInstance& ci) {
  LoadState state(ci);
  const Legs legs(ci);
  std::vector<int> rp_of(ci.n, -1), shelter_of(ci.n, -1);

  auto shelters_fit = [&]() {
    if (!ci.enforce_shelter_capacity) return true;
    std::vector<int> usage(ci.k, 0);
    for (int r = 0; r < ci.n; ++r) {
      if (shelter_of[r] >= 0) usage[shelter_of[r]] += state.load(r);
    }
    for (int s = 0; s < ci.k; ++s) {
      if (usage[s] > ci.shelter_capacity[s]) return false;
    }
    return true;
  };

  for (int p : legs.rp_by_priority) {
    while (state.deficit(p) > 0) {
      std::vector<std::tuple<Seconds, int, int>> candidates;
      for (int r = 0; r < ci.n; ++r) {
        if (rp_of[r] >= 0) continue;
        for (int s = 0; s < ci.k; ++s) {
          if (ci.admissible(r, p, s)) {
            candidates.emplace_back(ci.to_rp(r, p) + ci.to_shelter(p, s), r, s);
          }
        }
      }
      std::sort(candidates.begin(), candidates.end());
      bool placed = false;
      for (const auto& [cost, r, s] : candidates) {
        if (rp_of[r] >= 0) continue;
        const bool positive = state.add(r, p);
        shelter_of[r] = s;
        if (positive && shelters_fit()) {
          rp_of[r] = p;
          placed = true;
          break;
        }
        shelter_of[r] = -1;
        state.remove(r, p);
      }
      if (!placed) break;
    }
  }

  std::vector<IndexedAssignment> plan;
  for (int r = 0; r < ci.n; ++r) {
    if (rp_of[r] >= 0) {
      plan.push_back({r, rp_of[r], shelter_of[r], state.load(r), state.wheel(r)});
    }
  }
  return plan;
}

// Lower bound on the time objective of any plan at least as good on
// uncovered weight as `uncovered`.
Seconds greedy_lower_bound(const CompiledInstance& ci, std::int64_t uncovered) {
  const LoadState empty(ci);
  const Legs legs(ci);
  std::vector<Relief> items;
  for (int r = 0; r < ci.n; ++r) {
    const Relief rel = relief_of(ci, legs, empty, r);
    if (rel.value > 0) items.push_back(rel);
  }
  const Seconds lb =
      min_extra_time(items, empty.uncovered() - uncovered, ci.time_objective);
  return lb >= kInf ? 0 : lb;
}

class BranchAndBound {
 public:
  BranchAndBound(const CompiledInstance& ci, std::vector<IndexedAssignment> incumbent)
      : ci_(ci),
        legs_(ci),
        state_(ci),
        choice_(ci.n, -1),
        shelter_total_(total_shelter_capacity(ci)),
        best_plan_(std::move(incumbent)),
        best_(key_of(ci, best_plan_)) {
    order_.resize(ci.n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return ci.capacity[a] > ci.capacity[b]; });
    options_.resize(ci.n);
    for (int r = 0; r < ci.n; ++r) {
      for (int p = 0; p < ci.m; ++p) {
        if (legs_.leg_min[r * ci.m + p] != kNoPath) options_[r].push_back(p);
      }
      std::stable_sort(options_[r].begin(), options_[r].end(), [&](int a, int b) {
        return legs_.leg_min[r * ci.m + a] < legs_.leg_min[r * ci.m + b];
      });
    }
  }

  void run() { dfs(0, 0, 0); }
  const std::vector<IndexedAssignment>& best_plan() const { return best_plan_; }
  const Key& best_key() const { return best_; }

 private:
  void dfs(int depth, Seconds t_cur, std::int64_t v_cur) {
    if (!promising(depth, t_cur, v_cur)) return;
    if (depth == ci_.n) {
      leaf(v_cur);
      return;
    }
    const int r = order_[depth];
    for (int p : options_[r]) {
      // Joining a covered rescue point can still pay off: an earlier arrival
      // takes load off slower members, which may then fit nearer shelters.
      // add() rejects the branch when someone would be left empty.
      if (state_.add(r, p)) {
        choice_[r] = p;
        dfs(depth + 1, ci_.aggregate(t_cur, legs_.leg_min[r * ci_.m + p]), v_cur + 1);
        choice_[r] = -1;
      }
      state_.remove(r, p);
    }
    dfs(depth + 1, t_cur, v_cur);
  }

  bool promising(int depth, Seconds t_cur, std::int64_t v_cur) {
    const std::int64_t u_cur = state_.uncovered();
    int room = std::numeric_limits<int>::max();
    if (ci_.enforce_shelter_capacity) {
      room = shelter_total_ - state_.total_loaded();
      if (room < 0) return false;
    }

    reliefs_.clear();
    std::int64_t fleet = 0;
    for (int i = depth; i < ci_.n; ++i) {
      const Relief rel = relief_of(ci_, legs_, state_, order_[i]);
      if (rel.value > 0) {
        reliefs_.push_back(rel);
        fleet += rel.capacity;
      }
    }

    // Pour the remaining seats into the highest-priority deficits.
    std::int64_t pour = std::min<std::int64_t>(fleet, room);
    std::int64_t lb_u = u_cur;
    for (int p : legs_.rp_by_priority) {
      if (pour <= 0) break;
      const std::int64_t take = std::min<std::int64_t>(pour, state_.deficit(p));
      lb_u -= take * ci_.priority[p];
      pour -= take;
    }
    const Objective& best = best_.objective;
    if (lb_u != best.uncovered_weight) return lb_u < best.uncovered_weight;

    const std::int64_t needed = u_cur - best.uncovered_weight;
    Seconds extra = min_extra_time(reliefs_, needed, ci_.time_objective);
    if (extra >= kInf) return false;
    const Seconds t_lb = ci_.time_objective == TimeObjective::kSum
                             ? t_cur + extra
                             : std::max(t_cur, extra);
    if (t_lb != best.total_time) return t_lb < best.total_time;
    const std::int64_t v_lb = v_cur + min_extra_vehicles(reliefs_, needed);
    return v_lb <= best.vehicles_used;
  }

  void leaf(std::int64_t v_cur) {
    const std::int64_t u = state_.uncovered();
    const Objective& best = best_.objective;
    if (u > best.uncovered_weight) return;

    trip_r_.clear();
    for (int r = 0; r < ci_.n; ++r) {
      if (choice_[r] >= 0) trip_r_.push_back(r);
    }
    const int count = static_cast<int>(trip_r_.size());

    // Time floor of trips i.. with their cheapest shelters.
    rest_.assign(count + 1, 0);
    for (int i = count - 1; i >= 0; --i) {
      const int r = trip_r_[i];
      rest_[i] = ci_.aggregate(rest_[i + 1], legs_.leg_min[r * ci_.m + choice_[r]]);
    }

    Seconds limit = kInf;
    if (u == best.uncovered_weight) {
      limit = v_cur > best.vehicles_used ? best.total_time - 1 : best.total_time;
    }
    inner_best_ = limit + 1;
    inner_found_ = false;
    cur_s_.assign(count, -1);
    room_ = ci_.shelter_capacity;
    assign_shelters(0, 0);
    if (!inner_found_) return;

    Key key;
    key.objective = {u, inner_best_, v_cur};
    std::vector<IndexedAssignment> plan;
    for (int i = 0; i < count; ++i) {
      const int r = trip_r_[i];
      key.triples.push_back({r, choice_[r], best_s_[i]});
      plan.push_back({r, choice_[r], best_s_[i], state_.load(r), state_.wheel(r)});
    }
    if (better(key, best_)) {
      best_ = std::move(key);
      best_plan_ = std::move(plan);
    }
  }

  void assign_shelters(int i, Seconds t_acc) {
    const int count = static_cast<int>(trip_r_.size());
    if (i == count) {
      if (t_acc < inner_best_) {
        inner_best_ = t_acc;
        inner_found_ = true;
        best_s_ = cur_s_;
      }
      return;
    }
    const int r = trip_r_[i];
    const int p = choice_[r];
    const int load = state_.load(r);
    for (int s = 0; s < ci_.k; ++s) {
      const Seconds leg2 = ci_.to_shelter(p, s);
      if (leg2 == kNoPath) continue;
      if (ci_.enforce_shelter_capacity && room_[s] < load) continue;
      const Seconds t_next = ci_.aggregate(t_acc, ci_.to_rp(r, p) + leg2);
      if (ci_.aggregate(t_next, rest_[i + 1]) >= inner_best_) continue;
      room_[s] -= load;
      cur_s_[i] = s;
      assign_shelters(i + 1, t_next);
      room_[s] += load;
    }
  }

  const CompiledInstance& ci_;
  const Legs legs_;
  LoadState state_;
  std::vector<int> order_;
  std::vector<std::vector<int>> options_;
  std::vector<int> choice_;
  int shelter_total_;

  std::vector<IndexedAssignment> best_plan_;
  Key best_;

  std::vector<Relief> reliefs_;
  std::vector<int> trip_r_;
  std::vector<Seconds> rest_;
  std::vector<int> room_;
  std::vector<int> cur_s_, best_s_;
  Seconds inner_best_ = 0;
  bool inner_found_ = false;
};

}  // namespace

RecommendationPlan solve_heuristic(const ProblemInstance& instance) {
  const auto ci = detail::compile(instance);
  const auto plan = greedy(ci);
  auto out = finalize_plan(instance, detail::materialize(ci, plan), SolverKind::kHeuristic);
  out.lower_bound_s = greedy_lower_bound(ci, out.objective.uncovered_weight);
  return out;
}

RecommendationPlan solve(const ProblemInstance& instance, const SolverOptions& options) {
  const auto ci = detail::compile(instance);
  if (ci.n > options.exact_bound) return solve_heuristic(instance);

  BranchAndBound search(ci, greedy(ci));
  search.run();
  auto out = finalize_plan(instance, detail::materialize(ci, search.best_plan()),
                           SolverKind::kExact);
  if (out.objective != search.best_key().objective) {
    throw std::logic_error("solver objective disagrees with finalized plan");
  }
  return out;
}

}  // namespace evacrec::rec
