#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "evacrec/kb/model.hpp"

namespace evacrec {

using Json = nlohmann::json;

// Entity <-> JSON. The *_from_json parsers throw Error(kSchemaViolation) with
// one detail line per missing or malformed field; they do not check
// cross-entity relations (see validate()).
Json to_json(const Position& position);
Json to_json(const Person& person);
Json to_json(const Vehicle& vehicle);
Json to_json(const MobileResource& resource);
Json to_json(const RescuePoint& rescue_point);
Json to_json(const Shelter& shelter);
Json to_json(const Crisis& crisis);
Json to_json(const KnowledgeSnapshot& snapshot);

Person person_from_json(const Json& j);
Vehicle vehicle_from_json(const Json& j);
MobileResource mobile_resource_from_json(const Json& j);
RescuePoint rescue_point_from_json(const Json& j);
Shelter shelter_from_json(const Json& j);
Crisis crisis_from_json(const Json& j);

// Reads `"position": [lat, lon]` or `"node": "<id>"` from an entity object.
std::optional<Position> position_from_json(const Json& entity);

// Parses and fully validates (schema, invariants, referential closure).
// Throws Error(kSchemaViolation) listing every violation found.
KnowledgeSnapshot snapshot_from_json(const Json& j);

// Throws Error(kIoError) when the file cannot be written.
void save_snapshot(const std::filesystem::path& path,
                   const KnowledgeSnapshot& snapshot);

// Throws Error(kIoError) for unreadable files or malformed JSON, and
// Error(kSchemaViolation) for invalid content.
KnowledgeSnapshot load_snapshot(const std::filesystem::path& path);

// Reads a whole file as JSON. Throws Error(kIoError).
Json read_json_file(const std::filesystem::path& path);

}  // namespace evacrec
