#include "evacrec/scenario/random_instance.hpp"

#include <cstdio>
#include <limits>
#include <map>

namespace evacrec::scenario {

namespace {

constexpr double kLatStep = 0.0045;  // about 500 m
constexpr double kLonStep = 0.0069;
constexpr Coordinate kOrigin{49.40, 2.80};

std::string grid_id(int row, int col) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "g%02d_%02d", row, col);
  return buf;
}

std::map<std::string, Coordinate> grid_nodes(int n) {
  std::map<std::string, Coordinate> nodes;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      nodes.emplace(grid_id(r, c), Coordinate{kOrigin.lat + r * kLatStep,
                                              kOrigin.lon + c * kLonStep});
    }
  }
  return nodes;
}

std::string id_with(const char* prefix, int i) {
  return std::string(prefix) + std::to_string(i + 1);
}

}  // namespace

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

road::RoadGraph random_grid(std::mt19937_64& rng, int n, int drop_percent) {
  std::vector<road::EdgeSpec> edges;
  auto maybe_edge = [&](const std::string& a, const std::string& b) {
    if (draw(rng, 0, 99) < drop_percent) return;
    edges.push_back({a, b, static_cast<double>(draw(rng, 100, 1000)),
                     draw(rng, 0, 1) ? 50.0 : 30.0});
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) {
        maybe_edge(grid_id(r, c), grid_id(r, c + 1));
        maybe_edge(grid_id(r, c + 1), grid_id(r, c));
      }
      if (r + 1 < n) {
        maybe_edge(grid_id(r, c), grid_id(r + 1, c));
        maybe_edge(grid_id(r + 1, c), grid_id(r, c));
      }
    }
  }
  return road::RoadGraph(grid_nodes(n), std::move(edges));
}

Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec) {
  Scenario s;
  const int n = spec.grid;

  // Streets are two-way with the same length and speed both ways; a dropped
  // street is gone in both directions.
  std::vector<road::EdgeSpec> edges;
  auto street = [&](const std::string& a, const std::string& b) {
    if (draw(rng, 0, 99) < spec.drop_edge_percent) return;
    const double length = static_cast<double>(draw(rng, spec.min_edge_m, spec.max_edge_m));
    const double speed = draw(rng, 0, 1) ? 50.0 : 30.0;
    edges.push_back({a, b, length, speed});
    edges.push_back({b, a, length, speed});
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) street(grid_id(r, c), grid_id(r, c + 1));
      if (r + 1 < n) street(grid_id(r, c), grid_id(r + 1, c));
    }
  }
  const auto nodes = grid_nodes(n);
  s.graph = road::RoadGraph(nodes, std::move(edges));
  auto random_node = [&]() { return grid_id(draw(rng, 0, n - 1), draw(rng, 0, n - 1)); };

  auto& snap = s.snapshot;
  snap.crisis.kind = CrisisKind{CrisisKindTag::kFlood, {}};

  const int resources = draw(rng, spec.min_resources, spec.max_resources);
  for (int i = 0; i < resources; ++i) {
    Person driver;
    driver.id = EntityId(id_with("d", i));
    driver.name = "Driver " + std::to_string(i + 1);
    driver.role = PersonRole::kHumanResource;
    driver.licenses = {"B"};

    Vehicle v;
    v.id = EntityId(id_with("v", i));
    switch (draw(rng, 0, 2)) {
      case 0:
        v.category = {VehicleKind::kCar, {}};
        v.seats = draw(rng, 2, 5);
        break;
      case 1:
        v.category = {VehicleKind::kMinibus, {}};
        v.seats = 9;
        v.wheelchair_slots = draw(rng, 0, 2);
        break;
      default:
        v.category = {VehicleKind::kBoat, {}};
        v.seats = 6;
        v.terrain = Terrain::kWater;
        break;
    }

    MobileResource mr;
    mr.id = EntityId(id_with("r", i));
    mr.driver = driver.id;
    mr.vehicle = v.id;
    mr.position = nodes.at(random_node());
    snap.persons.emplace(driver.id, driver);
    snap.vehicles.emplace(v.id, v);
    snap.mobile_resources.emplace(mr.id, mr);
  }

  const int rps = draw(rng, spec.min_rescue_points, spec.max_rescue_points);
  for (int i = 0; i < rps; ++i) {
    RescuePoint rp;
    rp.place = {EntityId(id_with("rp", i)), PlaceKind::kRescuePoint, NodeRef{random_node()}};
    rp.evacuees = draw(rng, spec.min_demand, spec.max_demand);
    rp.wheelchair_evacuees = draw(rng, 0, std::min(spec.max_wheelchair, rp.evacuees));
    rp.priority = draw(rng, kMinPriority, kMaxPriority);
    if (draw(rng, 0, 99) < spec.land_only_percent) {
      snap.crisis.terrain_overrides[rp.id()] = {Terrain::kLand};
    }
    snap.rescue_points.emplace(rp.id(), rp);
  }

  const int shelters = draw(rng, spec.min_shelters, spec.max_shelters);
  for (int i = 0; i < shelters; ++i) {
    Shelter sh;
    sh.place = {EntityId(id_with("s", i)), PlaceKind::kShelter, NodeRef{random_node()}};
    sh.capacity = draw(rng, spec.min_shelter_capacity, spec.max_shelter_capacity);
    snap.shelters.emplace(sh.id(), sh);
  }
  return s;
}

std::vector<Scenario> random_batch(std::uint64_t seed, int count, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<Scenario> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_scenario(rng, spec));
  return out;
}

}  // namespace evacrec::scenario
