#include "evacrec/rec/load_rule.hpp"

#include <algorithm>
#include <numeric>

namespace evacrec::rec {

std::vector<Load> load_rule(std::span<const LoadCandidate> assigned, Demand demand,
                            bool enforce_wheelchair) {
  std::vector<std::size_t> order(assigned.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (assigned[a].t_to_rp != assigned[b].t_to_rp) {
      return assigned[a].t_to_rp < assigned[b].t_to_rp;
    }
    return assigned[a].id < assigned[b].id;
  });

  std::vector<Load> loads(assigned.size());
  int wheelchair_left = demand.wheelchair;
  for (std::size_t i : order) {
    const int slots = std::min(assigned[i].wheelchair_slots, assigned[i].capacity);
    const int take = std::min(slots, wheelchair_left);
    loads[i].wheelchair = take;
    loads[i].evacuees = take;
    wheelchair_left -= take;
  }

  int ambulant_left = demand.evacuees - demand.wheelchair;
  int overflow_left = enforce_wheelchair ? 0 : wheelchair_left;
  for (std::size_t i : order) {
    int free = assigned[i].capacity - loads[i].evacuees;
    const int overflow = std::min(free, overflow_left);
    loads[i].wheelchair += overflow;
    loads[i].evacuees += overflow;
    overflow_left -= overflow;
    free -= overflow;
    const int ambulant = std::min(free, ambulant_left);
    loads[i].evacuees += ambulant;
    ambulant_left -= ambulant;
  }
  return loads;
}

}  // namespace evacrec::rec
