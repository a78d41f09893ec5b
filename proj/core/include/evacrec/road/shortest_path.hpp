#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evacrec/kb/model.hpp"
#include "evacrec/road/road_graph.hpp"

namespace evacrec::road {

// nullopt is the UNREACHABLE sentinel throughout the library.
using TravelTime = std::optional<Seconds>;

// Single-source Dijkstra over per-edge integer times.
std::vector<TravelTime> shortest_times_from(const RoadGraph& graph,
                                            NodeIndex source);

// Throws Error(kUnknownNode) if either node is missing.
TravelTime shortest_time(const RoadGraph& graph, std::string_view from,
                         std::string_view to);

// Nearest node by haversine distance; ties go to the smallest node id.
// Throws Error(kEmptyGraph).
NodeIndex snap(const RoadGraph& graph, Coordinate where);

// Node references resolve directly (Error(kUnknownNode) if absent),
// coordinates are snapped.
NodeIndex resolve(const RoadGraph& graph, const Position& position);

}  // namespace evacrec::road
