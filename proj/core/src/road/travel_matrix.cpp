#include "evacrec/road/travel_matrix.hpp"

#include <algorithm>
#include <map>

#include "evacrec/error.hpp"

namespace evacrec::road {

TravelTimeMatrix::TravelTimeMatrix(std::vector<EntityId> origins,
                                   std::vector<EntityId> destinations,
                                   std::vector<TravelTime> entries)
    : origins_(std::move(origins)),
      destinations_(std::move(destinations)),
      entries_(std::move(entries)) {
  if (entries_.size() != origins_.size() * destinations_.size()) {
    throw Error(ErrorCode::kSchemaViolation,
                "matrix entry count does not match its dimensions");
  }
}

std::optional<std::size_t> TravelTimeMatrix::origin_index(const EntityId& id) const {
  auto it = std::find(origins_.begin(), origins_.end(), id);
  if (it == origins_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - origins_.begin());
}

std::optional<std::size_t> TravelTimeMatrix::destination_index(
    const EntityId& id) const {
  auto it = std::find(destinations_.begin(), destinations_.end(), id);
  if (it == destinations_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - destinations_.begin());
}

TravelTimeMatrix TravelTimeMatrix::select_origins(
    std::span<const EntityId> origins) const {
  std::vector<TravelTime> entries;
  entries.reserve(origins.size() * cols());
  for (const auto& id : origins) {
    const auto row = origin_index(id);
    if (!row) {
      throw Error(ErrorCode::kMatrixIncomplete,
                  "matrix has no row for '" + id.str() + "'");
    }
    for (std::size_t c = 0; c < cols(); ++c) entries.push_back(at(*row, c));
  }
  return TravelTimeMatrix({origins.begin(), origins.end()}, destinations_,
                          std::move(entries));
}

TravelTimeMatrix build_matrix(const RoadGraph& graph,
                              std::span<const Waypoint> origins,
                              std::span<const Waypoint> destinations) {
  std::vector<EntityId> row_ids;
  std::vector<EntityId> col_ids;
  std::vector<TravelTime> entries;
  entries.reserve(origins.size() * destinations.size());
  for (const auto& o : origins) row_ids.push_back(o.id);
  for (const auto& d : destinations) col_ids.push_back(d.id);
  if (origins.empty() || destinations.empty()) {
    return TravelTimeMatrix(std::move(row_ids), std::move(col_ids), {});
  }
  if (graph.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "cannot build a matrix on an empty graph");
  }

  std::vector<NodeIndex> dest_nodes;
  dest_nodes.reserve(destinations.size());
  for (const auto& d : destinations) dest_nodes.push_back(resolve(graph, d.position));

  std::map<NodeIndex, std::vector<TravelTime>> runs;
  for (const auto& o : origins) {
    const NodeIndex source = resolve(graph, o.position);
    auto it = runs.find(source);
    if (it == runs.end()) {
      it = runs.emplace(source, shortest_times_from(graph, source)).first;
    }
    for (NodeIndex t : dest_nodes) entries.push_back(it->second[t]);
  }
  return TravelTimeMatrix(std::move(row_ids), std::move(col_ids), std::move(entries));
}

nlohmann::json to_json(const TravelTimeMatrix& m) {
  nlohmann::json origins = nlohmann::json::array();
  nlohmann::json destinations = nlohmann::json::array();
  for (const auto& id : m.origins()) origins.push_back(id.str());
  for (const auto& id : m.destinations()) destinations.push_back(id.str());
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto t = m.at(r, c);
      row.push_back(t ? nlohmann::json(*t) : nlohmann::json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  return {{"origins", std::move(origins)},
          {"destinations", std::move(destinations)},
          {"seconds", std::move(rows)}};
}

TravelTimeMatrix matrix_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& msg) {
    return Error(ErrorCode::kSchemaViolation, "matrix: " + msg, {"matrix: " + msg});
  };
  if (!j.is_object() || !j.contains("origins") || !j.contains("destinations") ||
      !j.contains("seconds")) {
    throw bad("expected {origins, destinations, seconds}");
  }
  std::vector<EntityId> origins;
  std::vector<EntityId> destinations;
  for (const auto& o : j.at("origins")) {
    if (!o.is_string()) throw bad("origin ids must be strings");
    origins.emplace_back(o.get<std::string>());
  }
  for (const auto& d : j.at("destinations")) {
    if (!d.is_string()) throw bad("destination ids must be strings");
    destinations.emplace_back(d.get<std::string>());
  }
  const auto& rows = j.at("seconds");
  if (!rows.is_array() || rows.size() != origins.size()) {
    throw bad("row count does not match origins");
  }
  std::vector<TravelTime> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != destinations.size()) {
      throw bad("column count does not match destinations");
    }
    for (const auto& v : row) {
      if (v.is_null()) {
        entries.emplace_back(std::nullopt);
      } else if (v.is_number_integer() && v.get<Seconds>() >= 0) {
        entries.emplace_back(v.get<Seconds>());
      } else {
        throw bad("entries must be non-negative integers or null");
      }
    }
  }
  return TravelTimeMatrix(std::move(origins), std::move(destinations),
                          std::move(entries));
}

}  // namespace evacrec::road
