#pragma once

#include <span>
#include <vector>

#include "evacrec/rec/feasibility.hpp"
#include "rec/compiled_instance.hpp"

namespace evacrec::rec::detail {

// Checks every enforced constraint on an index-level plan. With `out` null
// the check stops at the first violation.
bool check_indexed(const CompiledInstance& ci,
                   std::span<const IndexedAssignment> plan,
                   std::vector<Violation>* out);

}  // namespace evacrec::rec::detail
