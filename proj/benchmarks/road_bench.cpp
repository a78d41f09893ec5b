#include <random>

#include <benchmark/benchmark.h>

#include "evacrec/road/road_graph.hpp"
#include "evacrec/road/shortest_path.hpp"
#include "evacrec/road/travel_matrix.hpp"

namespace {

using namespace evacrec;

void BM_Dijkstra(benchmark::State& state) {
  const auto g = road::make_grid(static_cast<int>(state.range(0)));
  road::NodeIndex s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(road::shortest_times_from(g, s));
    s = (s + 7) % static_cast<road::NodeIndex>(g.node_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_Dijkstra)->Arg(20)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

void BM_BuildMatrix(benchmark::State& state) {
  const int n = 100;
  const auto g = road::make_grid(n);
  std::mt19937_64 rng(5);
  std::vector<road::Waypoint> origins, destinations;
  for (int i = 0; i < state.range(0); ++i) {
    const auto node = static_cast<road::NodeIndex>(rng() % g.node_count());
    origins.push_back({EntityId("r" + std::to_string(i)), g.coordinate(node)});
  }
  for (int i = 0; i < 10; ++i) {
    const auto node = static_cast<road::NodeIndex>(rng() % g.node_count());
    destinations.push_back({EntityId("p" + std::to_string(i)), NodeRef{g.node_id(node)}});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(road::build_matrix(g, origins, destinations));
  }
}
BENCHMARK(BM_BuildMatrix)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
