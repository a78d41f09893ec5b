#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "evacrec/scenario/scenario.hpp"

namespace evacrec::scenario {

// Pinned generator for property batches. Changing any of these changes every
// seeded batch.
struct RandomSpec {
  int grid = 6;
  int min_resources = 1, max_resources = 6;
  int min_rescue_points = 1, max_rescue_points = 4;
  int min_shelters = 1, max_shelters = 3;
  int min_demand = 1, max_demand = 10;
  int max_wheelchair = 2;
  int min_shelter_capacity = 3, max_shelter_capacity = 25;
  int min_edge_m = 100, max_edge_m = 1000;
  int drop_edge_percent = 10;
  int land_only_percent = 20;  // rescue points a boat cannot reach
};

// Uniform integer in [lo, hi] by rejection sampling, so the sequence does not
// depend on the standard library's distribution implementation.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

// Small flood scenario on a randomly weighted grid: cars (2-5 seats),
// minibuses (9 seats, 0-2 wheelchair slots) and boats (6 seats, water).
Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec = {});

// `count` scenarios from one seed.
std::vector<Scenario> random_batch(std::uint64_t seed, int count, const RandomSpec& spec = {});

// Random grid graph for road tests: `n` x `n` nodes, random lengths and
// speeds, about `drop_percent` of the edges removed, each direction drawn
// independently.
road::RoadGraph random_grid(std::mt19937_64& rng, int n, int drop_percent = 10);

}  // namespace evacrec::scenario
