#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "evacrec/rec/instance.hpp"

namespace evacrec::rec {

struct LoadCandidate {
  std::string_view id;
  int capacity = 0;
  int wheelchair_slots = 0;
  Seconds t_to_rp = 0;
};

struct Demand {
  int evacuees = 0;
  int wheelchair = 0;
};

struct Load {
  int evacuees = 0;    // total persons carried, wheelchair users included
  int wheelchair = 0;  // of which wheelchair users
  friend bool operator==(const Load&, const Load&) = default;
};

// Splits a rescue point's demand over the resources sent to it.
//
// Resources are served in ascending (t_to_rp, id) order. Wheelchair evacuees
// go first into wheelchair slots; remaining evacuees then fill the remaining
// capacity in the same order. When wheelchair enforcement is off, wheelchair
// evacuees that found no slot may take ordinary seats. The result is
// parallel to `assigned`.
std::vector<Load> load_rule(std::span<const LoadCandidate> assigned, Demand demand,
                            bool enforce_wheelchair = true);

}  // namespace evacrec::rec
