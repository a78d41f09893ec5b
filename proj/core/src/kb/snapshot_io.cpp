#include "evacrec/kb/snapshot_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "evacrec/error.hpp"

namespace evacrec {

namespace {

// Accumulates field-level problems for one entity instead of stopping at the
// first, so that validators can report everything in one pass.
class FieldReader {
 public:
  FieldReader(const Json& j, std::string who, std::vector<std::string>& errors)
      : j_(j), who_(std::move(who)), errors_(errors) {
    if (!j_.is_object()) fail("expected a JSON object");
  }

  bool has(const char* key) const {
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }

  std::string str(const char* key, bool required = true) {
    if (!has(key)) {
      if (required) fail(std::string("missing field '") + key + "'");
      return {};
    }
    const Json& v = j_.at(key);
    if (!v.is_string()) {
      fail(std::string("field '") + key + "' must be a string");
      return {};
    }
    return v.get<std::string>();
  }

  int integer(const char* key, std::optional<int> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      fail(std::string("missing field '") + key + "'");
      return 0;
    }
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) {
      fail(std::string("field '") + key + "' must be an integer");
      return 0;
    }
    const auto wide = v.get<std::int64_t>();
    if (wide < std::numeric_limits<int>::min() ||
        wide > std::numeric_limits<int>::max()) {
      fail(std::string("field '") + key + "' out of range");
      return 0;
    }
    return static_cast<int>(wide);
  }

  std::int64_t int64(const char* key, std::int64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) {
      fail(std::string("field '") + key + "' must be an integer");
      return fallback;
    }
    return v.get<std::int64_t>();
  }

  bool boolean(const char* key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) {
      fail(std::string("field '") + key + "' must be a boolean");
      return fallback;
    }
    return v.get<bool>();
  }

  std::vector<std::string> strings(const char* key) {
    std::vector<std::string> out;
    if (!has(key)) return out;
    const Json& v = j_.at(key);
    if (!v.is_array()) {
      fail(std::string("field '") + key + "' must be an array of strings");
      return out;
    }
    for (const auto& item : v) {
      if (!item.is_string()) {
        fail(std::string("field '") + key + "' must be an array of strings");
        return {};
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  Position position() {
    if (auto p = position_from_json(j_)) return *p;
    fail("missing or malformed position: expected \"position\": [lat, lon] or "
         "\"node\": \"<id>\"");
    return Coordinate{};
  }

  void fail(const std::string& msg) { errors_.push_back(who_ + ": " + msg); }

 private:
  const Json& j_;
  std::string who_;
  std::vector<std::string>& errors_;
};

std::string describe(const Json& j, const char* kind) {
  if (j.is_object() && j.contains("id") && j.at("id").is_string()) {
    return std::string(kind) + " '" + j.at("id").get<std::string>() + "'";
  }
  return kind;
}

void throw_if(const std::vector<std::string>& errors, const std::string& what) {
  if (!errors.empty()) {
    throw Error(ErrorCode::kSchemaViolation, what + ": " + errors.front(),
                errors);
  }
}

void put_position(Json& obj, const Position& position) {
  if (const auto* c = std::get_if<Coordinate>(&position)) {
    obj["position"] = Json::array({c->lat, c->lon});
  } else {
    obj["node"] = std::get<NodeRef>(position).node;
  }
}

Person parse_person(const Json& j, std::vector<std::string>& errors) {
  FieldReader r(j, describe(j, "person"), errors);
  Person p;
  p.id = EntityId(r.str("id"));
  p.name = r.str("name", false);
  const auto role = r.str("role");
  if (auto parsed = parse_person_role(role)) {
    p.role = *parsed;
  } else if (!role.empty()) {
    r.fail("unknown role '" + role + "'");
  }
  if (r.has("mobility")) {
    const auto mobility = r.str("mobility");
    if (auto parsed = parse_mobility(mobility)) {
      p.mobility = *parsed;
    } else {
      r.fail("unknown mobility '" + mobility + "'");
    }
  }
  for (auto& license : r.strings("licenses")) p.licenses.insert(std::move(license));
  return p;
}

Vehicle parse_vehicle(const Json& j, std::vector<std::string>& errors) {
  FieldReader r(j, describe(j, "vehicle"), errors);
  Vehicle v;
  v.id = EntityId(r.str("id"));
  const auto category = r.str("category");
  if (auto parsed = parse_vehicle_category(category)) {
    v.category = *parsed;
  } else if (!category.empty()) {
    r.fail("unknown category '" + category + "'");
  }
  v.seats = r.integer("seats");
  v.wheelchair_slots = r.integer("wheelchair_slots", 0);
  v.required_license = r.str("required_license", false);
  if (r.has("terrain")) {
    const auto terrain = r.str("terrain");
    if (auto parsed = parse_terrain(terrain)) {
      v.terrain = *parsed;
    } else {
      r.fail("unknown terrain '" + terrain + "'");
    }
  }
  return v;
}

MobileResource parse_mobile_resource(const Json& j,
                                     std::vector<std::string>& errors) {
  FieldReader r(j, describe(j, "mobile resource"), errors);
  MobileResource m;
  m.id = EntityId(r.str("id"));
  m.driver = EntityId(r.str("driver"));
  m.vehicle = EntityId(r.str("vehicle"));
  m.position = r.position();
  m.available = r.boolean("available", true);
  m.committed = r.boolean("committed", false);
  m.updated_at_ms = r.int64("updated_at_ms", 0);
  return m;
}

RescuePoint parse_rescue_point(const Json& j,
                               std::vector<std::string>& errors) {
  FieldReader r(j, describe(j, "rescue point"), errors);
  RescuePoint rp;
  rp.place.id = EntityId(r.str("id"));
  rp.place.kind = PlaceKind::kRescuePoint;
  rp.place.position = r.position();
  rp.evacuees = r.integer("evacuees");
  rp.wheelchair_evacuees = r.integer("wheelchair_evacuees", 0);
  rp.priority = r.integer("priority");
  return rp;
}

Shelter parse_shelter(const Json& j, std::vector<std::string>& errors) {
  FieldReader r(j, describe(j, "shelter"), errors);
  Shelter s;
  s.place.id = EntityId(r.str("id"));
  s.place.kind = PlaceKind::kShelter;
  s.place.position = r.position();
  s.capacity = r.integer("capacity");
  return s;
}

Crisis parse_crisis(const Json& j, std::vector<std::string>& errors) {
  FieldReader r(j, "crisis", errors);
  Crisis c;
  c.id = EntityId(r.str("id"));
  const auto kind = r.str("kind");
  if (auto parsed = parse_crisis_kind(kind)) {
    c.kind = *parsed;
  } else if (!kind.empty()) {
    r.fail("unknown kind '" + kind + "'");
  }
  if (r.has("terrain_overrides")) {
    const Json& overrides = j.at("terrain_overrides");
    if (!overrides.is_object()) {
      r.fail("terrain_overrides must be an object");
    } else {
      for (const auto& [rp, list] : overrides.items()) {
        TerrainSet terrains;
        if (!list.is_array()) {
          r.fail("terrain_overrides['" + rp + "'] must be an array");
          continue;
        }
        for (const auto& t : list) {
          auto parsed = t.is_string() ? parse_terrain(t.get<std::string>())
                                      : std::nullopt;
          if (!parsed) {
            r.fail("terrain_overrides['" + rp + "'] has an unknown terrain");
            continue;
          }
          terrains.insert(*parsed);
        }
        c.terrain_overrides.emplace(EntityId(rp), std::move(terrains));
      }
    }
  }
  return c;
}

template <typename T, typename Parse, typename Key>
void parse_array(const Json& root, const char* key, std::map<EntityId, T>& out,
                 std::vector<std::string>& errors, Parse parse, Key key_of) {
  if (!root.contains(key)) {
    errors.push_back(std::string("missing top-level key '") + key + "'");
    return;
  }
  const Json& arr = root.at(key);
  if (!arr.is_array()) {
    errors.push_back(std::string("top-level key '") + key +
                     "' must be an array");
    return;
  }
  for (const auto& item : arr) {
    T entity = parse(item, errors);
    const EntityId id = key_of(entity);
    if (id.empty()) continue;
    if (!out.emplace(id, std::move(entity)).second) {
      errors.push_back(std::string(key) + ": duplicate id '" + id.str() + "'");
    }
  }
}

}  // namespace

std::optional<Position> position_from_json(const Json& entity) {
  if (!entity.is_object()) return std::nullopt;
  if (entity.contains("position") && !entity.at("position").is_null()) {
    const Json& p = entity.at("position");
    if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      return Coordinate{p[0].get<double>(), p[1].get<double>()};
    }
    return std::nullopt;
  }
  if (entity.contains("node") && entity.at("node").is_string()) {
    return NodeRef{entity.at("node").get<std::string>()};
  }
  return std::nullopt;
}

Json to_json(const Position& position) {
  if (const auto* c = std::get_if<Coordinate>(&position)) {
    return Json::array({c->lat, c->lon});
  }
  return Json{{"node", std::get<NodeRef>(position).node}};
}

Json to_json(const Person& p) {
  Json licenses = Json::array();
  for (const auto& l : p.licenses) licenses.push_back(l);
  return Json{{"id", p.id.str()},
              {"name", p.name},
              {"role", to_string(p.role)},
              {"mobility", to_string(p.mobility)},
              {"licenses", std::move(licenses)}};
}

Json to_json(const Vehicle& v) {
  return Json{{"id", v.id.str()},
              {"category", to_string(v.category)},
              {"seats", v.seats},
              {"wheelchair_slots", v.wheelchair_slots},
              {"required_license", v.required_license},
              {"terrain", to_string(v.terrain)}};
}

Json to_json(const MobileResource& m) {
  Json j{{"id", m.id.str()},
         {"driver", m.driver.str()},
         {"vehicle", m.vehicle.str()},
         {"available", m.available},
         {"committed", m.committed},
         {"updated_at_ms", m.updated_at_ms}};
  put_position(j, m.position);
  return j;
}

Json to_json(const RescuePoint& rp) {
  Json j{{"id", rp.id().str()},
         {"evacuees", rp.evacuees},
         {"wheelchair_evacuees", rp.wheelchair_evacuees},
         {"priority", rp.priority}};
  put_position(j, rp.place.position);
  return j;
}

Json to_json(const Shelter& s) {
  Json j{{"id", s.id().str()}, {"capacity", s.capacity}};
  put_position(j, s.place.position);
  return j;
}

Json to_json(const Crisis& c) {
  Json overrides = Json::object();
  for (const auto& [rp, terrains] : c.terrain_overrides) {
    Json list = Json::array();
    for (Terrain t : terrains) list.push_back(to_string(t));
    overrides[rp.str()] = std::move(list);
  }
  return Json{{"id", c.id.str()},
              {"kind", to_string(c.kind)},
              {"terrain_overrides", std::move(overrides)}};
}

Json to_json(const KnowledgeSnapshot& s) {
  auto list = [](const auto& map) {
    Json arr = Json::array();
    for (const auto& [id, entity] : map) arr.push_back(to_json(entity));
    return arr;
  };
  return Json{{"schema_version", s.schema_version},
              {"crisis", to_json(s.crisis)},
              {"persons", list(s.persons)},
              {"vehicles", list(s.vehicles)},
              {"mobile_resources", list(s.mobile_resources)},
              {"rescue_points", list(s.rescue_points)},
              {"shelters", list(s.shelters)}};
}

Person person_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto p = parse_person(j, errors);
  throw_if(errors, "invalid person");
  return p;
}

Vehicle vehicle_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto v = parse_vehicle(j, errors);
  throw_if(errors, "invalid vehicle");
  return v;
}

MobileResource mobile_resource_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto m = parse_mobile_resource(j, errors);
  throw_if(errors, "invalid mobile resource");
  return m;
}

RescuePoint rescue_point_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto rp = parse_rescue_point(j, errors);
  throw_if(errors, "invalid rescue point");
  return rp;
}

Shelter shelter_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto s = parse_shelter(j, errors);
  throw_if(errors, "invalid shelter");
  return s;
}

Crisis crisis_from_json(const Json& j) {
  std::vector<std::string> errors;
  auto c = parse_crisis(j, errors);
  throw_if(errors, "invalid crisis");
  return c;
}

KnowledgeSnapshot snapshot_from_json(const Json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "snapshot must be a JSON object",
                {"snapshot must be a JSON object"});
  }
  KnowledgeSnapshot s;
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    errors.emplace_back("missing or non-integer 'schema_version'");
  } else {
    s.schema_version = j.at("schema_version").get<int>();
  }
  if (!j.contains("crisis")) {
    errors.emplace_back("missing top-level key 'crisis'");
  } else {
    s.crisis = parse_crisis(j.at("crisis"), errors);
  }
  parse_array(j, "persons", s.persons, errors, parse_person,
              [](const Person& p) { return p.id; });
  parse_array(j, "vehicles", s.vehicles, errors, parse_vehicle,
              [](const Vehicle& v) { return v.id; });
  parse_array(j, "mobile_resources", s.mobile_resources, errors,
              parse_mobile_resource,
              [](const MobileResource& m) { return m.id; });
  parse_array(j, "rescue_points", s.rescue_points, errors, parse_rescue_point,
              [](const RescuePoint& rp) { return rp.id(); });
  parse_array(j, "shelters", s.shelters, errors, parse_shelter,
              [](const Shelter& sh) { return sh.id(); });

  for (auto& v : validate(s)) errors.push_back(std::move(v));
  throw_if(errors, "invalid snapshot");
  return s;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kIoError,
                "cannot parse '" + path.string() + "': " + e.what());
  }
}

void save_snapshot(const std::filesystem::path& path,
                   const KnowledgeSnapshot& snapshot) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  }
  out << to_json(snapshot).dump(2) << '\n';
  if (!out) {
    throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
  }
}

KnowledgeSnapshot load_snapshot(const std::filesystem::path& path) {
  return snapshot_from_json(read_json_file(path));
}

}  // namespace evacrec
