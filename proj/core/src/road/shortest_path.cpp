#include "evacrec/road/shortest_path.hpp"

#include <functional>
#include <queue>
#include <utility>

#include "evacrec/error.hpp"

namespace evacrec::road {

std::vector<TravelTime> shortest_times_from(const RoadGraph& graph,
                                            NodeIndex source) {
  std::vector<TravelTime> dist(graph.node_count());
  using Entry = std::pair<Seconds, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != *dist[u]) continue;  // stale entry
    for (const auto& arc : graph.out_arcs(u)) {
      const Seconds nd = d + arc.time;
      if (!dist[arc.head] || nd < *dist[arc.head]) {
        dist[arc.head] = nd;
        heap.emplace(nd, arc.head);
      }
    }
  }
  return dist;
}

TravelTime shortest_time(const RoadGraph& graph, std::string_view from,
                         std::string_view to) {
  const auto s = graph.index_of(from);
  if (!s) throw Error(ErrorCode::kUnknownNode, "unknown node '" + std::string(from) + "'");
  const auto t = graph.index_of(to);
  if (!t) throw Error(ErrorCode::kUnknownNode, "unknown node '" + std::string(to) + "'");
  if (*s == *t) return 0;
  return shortest_times_from(graph, *s)[*t];
}

NodeIndex snap(const RoadGraph& graph, Coordinate where) {
  if (graph.empty()) throw Error(ErrorCode::kEmptyGraph, "cannot snap onto an empty graph");
  NodeIndex best = 0;
  double best_d = haversine_m(where, graph.coordinate(0));
  for (NodeIndex n = 1; n < graph.node_count(); ++n) {
    const double d = haversine_m(where, graph.coordinate(n));
    // Strict < keeps the earliest (smallest id) node on exact ties.
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

NodeIndex resolve(const RoadGraph& graph, const Position& position) {
  if (const auto* ref = std::get_if<NodeRef>(&position)) {
    if (auto n = graph.index_of(ref->node)) return *n;
    throw Error(ErrorCode::kUnknownNode, "unknown node '" + ref->node + "'");
  }
  return snap(graph, std::get<Coordinate>(position));
}

}  // namespace evacrec::road
