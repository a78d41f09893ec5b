#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evacrec/geo.hpp"

namespace evacrec::road {

using Seconds = std::int64_t;
using NodeIndex = std::uint32_t;

inline constexpr double kDefaultSpeedKmh = 30.0;

struct EdgeSpec {
  std::string from;
  std::string to;
  double length_m = 0.0;
  double speed_kmh = kDefaultSpeedKmh;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

// length / speed in whole seconds, rounded half up. Rounding happens per edge
// so that path sums stay exact integers.
Seconds edge_time_seconds(double length_m, double speed_kmh);

// Immutable directed road graph. Node ids are kept sorted so that node
// indices follow id order; adjacency is stored CSR-style.
class RoadGraph {
 public:
  struct Arc {
    NodeIndex head;
    Seconds time;
  };

  RoadGraph() = default;
  // Throws Error(kGraphViolation) listing every dangling endpoint and every
  // non-positive length or speed.
  RoadGraph(const std::map<std::string, Coordinate>& nodes,
            std::vector<EdgeSpec> edges);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::optional<NodeIndex> index_of(std::string_view id) const;
  const std::string& node_id(NodeIndex n) const { return ids_[n]; }
  Coordinate coordinate(NodeIndex n) const { return coords_[n]; }
  std::span<const Arc> out_arcs(NodeIndex n) const {
    return {arcs_.data() + offsets_[n], arcs_.data() + offsets_[n + 1]};
  }
  const std::vector<EdgeSpec>& edges() const noexcept { return edges_; }

  // Copy with one more directed edge; used to probe monotonicity.
  RoadGraph with_edge(EdgeSpec edge) const;

  // Content hash over nodes and edges.
  std::string fingerprint() const;

 private:
  std::vector<std::string> ids_;
  std::vector<Coordinate> coords_;
  std::vector<EdgeSpec> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
};

// Graph file: { "nodes": {id: [lat, lon]}, "edges": [{"from", "to",
// "length_m", "speed_kmh"?}] }. speed_kmh defaults to kDefaultSpeedKmh.
RoadGraph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RoadGraph& graph);
// Throws Error(kIoError) or Error(kGraphViolation).
RoadGraph load_graph(const std::filesystem::path& path);

// n x n grid, 4-neighbour, both directions, every edge `spacing_m` long.
// Node ids are "gRR_CC" (zero-padded row, column).
RoadGraph make_grid(int n, double spacing_m = 500.0,
                    Coordinate origin = {49.40, 2.80},
                    double speed_kmh = 36.0);

}  // namespace evacrec::road
