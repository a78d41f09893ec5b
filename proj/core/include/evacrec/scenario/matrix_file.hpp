#pragma once

// Precomputed travel times for a scenario:
//   {"fingerprint": hex, "to_rescue_points": matrix, "to_shelters": matrix}
// Rows of to_rescue_points cover every mobile resource, selectable or not, so
// one file serves any availability state with unchanged positions.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "evacrec/road/travel_matrix.hpp"
#include "evacrec/scenario/scenario.hpp"

namespace evacrec::scenario {

struct MatrixFile {
  std::string fingerprint;
  road::TravelTimeMatrix to_rescue_points;
  road::TravelTimeMatrix to_shelters;

  friend bool operator==(const MatrixFile&, const MatrixFile&) = default;
};

// Hash of the graph and of every waypoint id and position.
std::string matrix_fingerprint(const KnowledgeSnapshot& snapshot, const road::RoadGraph& graph);

MatrixFile build_matrix_file(const Scenario& scenario);

nlohmann::json to_json(const MatrixFile& file);
// Throws Error(kSchemaViolation).
MatrixFile matrix_file_from_json(const nlohmann::json& j);

// Throws Error(kIoError).
void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file);
MatrixFile read_matrix_file(const std::filesystem::path& path);

// Instance over the selectable resources of `snapshot` using the file's
// matrices as they are; the caller vouches that they fit.
rec::ProblemInstance instance_from_matrices(const KnowledgeSnapshot& snapshot,
                                            const MatrixFile& file,
                                            const SolverConfig& config);

// Instance using the precomputed matrices instead of the graph. Throws
// Error(kStaleMatrix) when the file was built for other positions or another
// graph.
rec::ProblemInstance make_instance(const Scenario& scenario, const MatrixFile& file);

}  // namespace evacrec::scenario
