#include "evacrec/road/road_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "evacrec/error.hpp"
#include "evacrec/fingerprint.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec::road {

Seconds edge_time_seconds(double length_m, double speed_kmh) {
  // seconds = length / (speed / 3.6), written to stay exact for the common
  // integer inputs (1000 m at 36 km/h is exactly 100 s).
  const double seconds = (length_m * 3600.0) / (speed_kmh * 1000.0);
  return static_cast<Seconds>(std::floor(seconds + 0.5));
}

RoadGraph::RoadGraph(const std::map<std::string, Coordinate>& nodes,
                     std::vector<EdgeSpec> edges)
    : edges_(std::move(edges)) {
  ids_.reserve(nodes.size());
  coords_.reserve(nodes.size());
  for (const auto& [id, coord] : nodes) {
    ids_.push_back(id);
    coords_.push_back(coord);
  }

  std::vector<std::string> problems;
  std::vector<std::pair<NodeIndex, Arc>> arcs;
  arcs.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const std::string where = "edge #" + std::to_string(i) + " (" + e.from +
                              " -> " + e.to + ")";
    const auto from = index_of(e.from);
    const auto to = index_of(e.to);
    if (!from) problems.push_back(where + ": unknown node '" + e.from + "'");
    if (!to) problems.push_back(where + ": unknown node '" + e.to + "'");
    if (!(e.length_m > 0.0) || !std::isfinite(e.length_m)) {
      problems.push_back(where + ": length_m must be > 0");
    }
    if (!(e.speed_kmh > 0.0) || !std::isfinite(e.speed_kmh)) {
      problems.push_back(where + ": speed_kmh must be > 0");
    }
    if (from && to && e.length_m > 0.0 && e.speed_kmh > 0.0) {
      arcs.push_back({*from, Arc{*to, edge_time_seconds(e.length_m, e.speed_kmh)}});
    }
  }
  if (!problems.empty()) {
    throw Error(ErrorCode::kGraphViolation, problems.front(), problems);
  }

  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  offsets_.assign(ids_.size() + 1, 0);
  for (const auto& [tail, arc] : arcs) ++offsets_[tail + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  arcs_.reserve(arcs.size());
  for (const auto& [tail, arc] : arcs) arcs_.push_back(arc);
}

std::optional<NodeIndex> RoadGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) {
                               return std::string_view(a) < b;
                             });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

RoadGraph RoadGraph::with_edge(EdgeSpec edge) const {
  std::map<std::string, Coordinate> nodes;
  for (std::size_t i = 0; i < ids_.size(); ++i) nodes.emplace(ids_[i], coords_[i]);
  auto edges = edges_;
  edges.push_back(std::move(edge));
  return RoadGraph(nodes, std::move(edges));
}

std::string RoadGraph::fingerprint() const {
  Fingerprint fp;
  fp.add(static_cast<std::int64_t>(ids_.size()));
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    fp.add(ids_[i]).add(coords_[i].lat).add(coords_[i].lon);
  }
  fp.add(static_cast<std::int64_t>(edges_.size()));
  for (const auto& e : edges_) {
    fp.add(e.from).add(e.to).add(e.length_m).add(e.speed_kmh);
  }
  return fp.hex();
}

RoadGraph graph_from_json(const nlohmann::json& j) {
  std::vector<std::string> problems;
  std::map<std::string, Coordinate> nodes;
  std::vector<EdgeSpec> edges;

  if (!j.is_object()) {
    throw Error(ErrorCode::kGraphViolation, "graph must be a JSON object",
                {"graph must be a JSON object"});
  }
  if (!j.contains("nodes") || !j.at("nodes").is_object()) {
    problems.emplace_back("graph: 'nodes' must be an object of id -> [lat, lon]");
  } else {
    for (const auto& [id, pos] : j.at("nodes").items()) {
      if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() ||
          !pos[1].is_number()) {
        problems.push_back("node '" + id + "': expected [lat, lon]");
        continue;
      }
      nodes.emplace(id, Coordinate{pos[0].get<double>(), pos[1].get<double>()});
    }
  }
  if (!j.contains("edges") || !j.at("edges").is_array()) {
    problems.emplace_back("graph: 'edges' must be an array");
  } else {
    std::size_t i = 0;
    for (const auto& e : j.at("edges")) {
      const std::string where = "edge #" + std::to_string(i++);
      if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
          !e.at("from").is_string() || !e.at("to").is_string() ||
          !e.contains("length_m") || !e.at("length_m").is_number()) {
        problems.push_back(where + ": expected {from, to, length_m, speed_kmh?}");
        continue;
      }
      EdgeSpec spec;
      spec.from = e.at("from").get<std::string>();
      spec.to = e.at("to").get<std::string>();
      spec.length_m = e.at("length_m").get<double>();
      if (e.contains("speed_kmh") && !e.at("speed_kmh").is_null()) {
        if (!e.at("speed_kmh").is_number()) {
          problems.push_back(where + ": speed_kmh must be a number");
          continue;
        }
        spec.speed_kmh = e.at("speed_kmh").get<double>();
      }
      edges.push_back(std::move(spec));
    }
  }
  if (!problems.empty()) {
    throw Error(ErrorCode::kGraphViolation, problems.front(), problems);
  }
  return RoadGraph(nodes, std::move(edges));
}

nlohmann::json to_json(const RoadGraph& graph) {
  nlohmann::json nodes = nlohmann::json::object();
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    const auto c = graph.coordinate(n);
    nodes[graph.node_id(n)] = nlohmann::json::array({c.lat, c.lon});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"length_m", e.length_m},
                     {"speed_kmh", e.speed_kmh}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

RoadGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_json_file(path));
}

RoadGraph make_grid(int n, double spacing_m, Coordinate origin,
                    double speed_kmh) {
  constexpr double kMetersPerDegree = kEarthRadiusM * std::numbers::pi / 180.0;
  const double dlat = spacing_m / kMetersPerDegree;
  const double dlon =
      spacing_m / (kMetersPerDegree * std::cos(origin.lat * std::numbers::pi / 180.0));

  auto name = [](int r, int c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "g%02d_%02d", r, c);
    return std::string(buf);
  };

  std::map<std::string, Coordinate> nodes;
  std::vector<EdgeSpec> edges;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      nodes.emplace(name(r, c), Coordinate{origin.lat + r * dlat, origin.lon + c * dlon});
      if (c + 1 < n) {
        edges.push_back({name(r, c), name(r, c + 1), spacing_m, speed_kmh});
        edges.push_back({name(r, c + 1), name(r, c), spacing_m, speed_kmh});
      }
      if (r + 1 < n) {
        edges.push_back({name(r, c), name(r + 1, c), spacing_m, speed_kmh});
        edges.push_back({name(r + 1, c), name(r, c), spacing_m, speed_kmh});
      }
    }
  }
  return RoadGraph(nodes, std::move(edges));
}

}  // namespace evacrec::road
