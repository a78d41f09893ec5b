#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "evacrec/error.hpp"
#include "evacrec/road/road_graph.hpp"
#include "evacrec/road/shortest_path.hpp"
#include "evacrec/road/travel_matrix.hpp"
#include "evacrec/scenario/random_instance.hpp"
#include "support/road_oracle.hpp"

namespace evacrec::road {
namespace {

using evacrec::testing::bellman_ford;
using evacrec::testing::nearest_node;
using Json = nlohmann::json;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kBadRequest;
}

RoadGraph line_graph() {
  // a -> b -> c -> d -> e with 10, 20, 30, 40 s (36 km/h = 10 m/s).
  std::map<std::string, Coordinate> nodes{{"a", {49.40, 2.80}},
                                          {"b", {49.40, 2.81}},
                                          {"c", {49.40, 2.82}},
                                          {"d", {49.40, 2.83}},
                                          {"e", {49.40, 2.84}}};
  return RoadGraph(nodes, {{"a", "b", 100, 36}, {"b", "c", 200, 36}, {"c", "d", 300, 36},
                           {"d", "e", 400, 36}});
}

TEST(EdgeTime, RoundsHalfUp) {
  EXPECT_EQ(edge_time_seconds(1000, 36), 100);
  EXPECT_EQ(edge_time_seconds(105, 36), 11);  // 10.5 s
  EXPECT_EQ(edge_time_seconds(104, 36), 10);  // 10.4 s
}

TEST(LoadGraph, OneEdgeFile) {
  const auto path = std::filesystem::temp_directory_path() / "evacrec-one-edge.json";
  std::ofstream(path) << R"({"nodes": {"x": [49.4, 2.8], "y": [49.41, 2.8]},
                            "edges": [{"from": "x", "to": "y", "length_m": 1000, "speed_kmh": 36}]})";
  const auto g = load_graph(path);
  ASSERT_EQ(g.edge_count(), 1u);
  ASSERT_EQ(g.out_arcs(*g.index_of("x")).size(), 1u);
  EXPECT_EQ(g.out_arcs(*g.index_of("x"))[0].time, 100);
  std::filesystem::remove(path);
}

TEST(LoadGraph, DefaultSpeedIsThirty) {
  const auto g = graph_from_json(Json::parse(
      R"({"nodes": {"x": [0, 0], "y": [0, 0.01]}, "edges": [{"from": "x", "to": "y", "length_m": 250}]})"));
  EXPECT_EQ(g.edges()[0].speed_kmh, kDefaultSpeedKmh);
  EXPECT_EQ(g.out_arcs(0)[0].time, 30);
}

TEST(LoadGraph, DanglingEdgeIsGraphViolation) {
  EXPECT_EQ(code_of([] {
              graph_from_json(Json::parse(
                  R"({"nodes": {"x": [0, 0]}, "edges": [{"from": "x", "to": "ghost", "length_m": 5}]})"));
            }),
            ErrorCode::kGraphViolation);
}

TEST(LoadGraph, NonPositiveLengthOrSpeed) {
  std::map<std::string, Coordinate> nodes{{"x", {0, 0}}, {"y", {0, 1}}};
  EXPECT_EQ(code_of([&] { RoadGraph(nodes, {{"x", "y", 0, 30}}); }), ErrorCode::kGraphViolation);
  EXPECT_EQ(code_of([&] { RoadGraph(nodes, {{"x", "y", 10, -1}}); }), ErrorCode::kGraphViolation);
}

TEST(LoadGraph, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_graph("/nonexistent/graph.json"); }), ErrorCode::kIoError);
}

TEST(Grid, TwentyByTwentyCounts) {
  const auto g = make_grid(20);
  EXPECT_EQ(g.node_count(), 400u);
  EXPECT_EQ(g.edge_count(), 1520u);
}

TEST(Graph, JsonRoundTrip) {
  const auto g = make_grid(3);
  const auto back = graph_from_json(to_json(g));
  EXPECT_EQ(back.fingerprint(), g.fingerprint());
  EXPECT_EQ(back.edges(), g.edges());
}

TEST(Snap, ExactNodeCoordinate) {
  const auto g = make_grid(4);
  for (NodeIndex i = 0; i < g.node_count(); ++i) EXPECT_EQ(snap(g, g.coordinate(i)), i);
}

TEST(Snap, TieGoesToSmallestId) {
  std::map<std::string, Coordinate> nodes{{"n2", {-0.001, 0.0}}, {"n1", {0.001, 0.0}}};
  const RoadGraph g(nodes, {});
  EXPECT_EQ(g.node_id(snap(g, {0.0, 0.0})), "n1");
}

TEST(Snap, EmptyGraph) {
  EXPECT_EQ(code_of([] { snap(RoadGraph(), {0, 0}); }), ErrorCode::kEmptyGraph);
}

TEST(Snap, MatchesLinearScan) {
  std::mt19937_64 rng(11);
  const auto g = scenario::random_grid(rng, 7);
  std::uniform_real_distribution<double> lat(49.39, 49.44), lon(2.79, 2.85);
  for (int i = 0; i < 500; ++i) {
    const Coordinate c{lat(rng), lon(rng)};
    EXPECT_EQ(g.node_id(snap(g, c)), nearest_node(g, c));
  }
}

TEST(ShortestTime, SameNodeIsZero) { EXPECT_EQ(shortest_time(line_graph(), "c", "c"), 0); }

TEST(ShortestTime, LineSumsEdges) {
  const auto g = line_graph();
  EXPECT_EQ(shortest_time(g, "a", "e"), 100);
  EXPECT_EQ(bellman_ford(g, *g.index_of("a"))[*g.index_of("e")], 100);
}

TEST(ShortestTime, NoReverseDirection) {
  EXPECT_EQ(shortest_time(line_graph(), "e", "a"), std::nullopt);
}

TEST(ShortestTime, UnknownNode) {
  EXPECT_EQ(code_of([] { shortest_time(line_graph(), "a", "zz"); }), ErrorCode::kUnknownNode);
}

std::vector<Waypoint> node_waypoints(const RoadGraph& g, std::initializer_list<NodeIndex> ids) {
  std::vector<Waypoint> out;
  for (auto i : ids) out.push_back({EntityId("w" + g.node_id(i)), NodeRef{g.node_id(i)}});
  return out;
}

TEST(Matrix, DiagonalIsZero) {
  const auto g = make_grid(5);
  const auto wps = node_waypoints(g, {0, 3, 7, 12, 24});
  const auto m = build_matrix(g, wps, wps);
  for (std::size_t i = 0; i < wps.size(); ++i) EXPECT_EQ(m.at(i, i), 0);
}

TEST(Matrix, EqualsPairwiseQueries) {
  const auto g = make_grid(6);
  const std::vector<Waypoint> origins{{EntityId("o1"), Coordinate{49.401, 2.801}},
                                      {EntityId("o2"), NodeRef{"g03_04"}},
                                      {EntityId("o3"), Coordinate{49.41, 2.82}}};
  const std::vector<Waypoint> dests{{EntityId("x1"), NodeRef{"g05_05"}},
                                    {EntityId("x2"), Coordinate{49.405, 2.81}}};
  const auto m = build_matrix(g, origins, dests);
  for (std::size_t r = 0; r < origins.size(); ++r) {
    for (std::size_t c = 0; c < dests.size(); ++c) {
      EXPECT_EQ(m.at(r, c), shortest_time(g, g.node_id(resolve(g, origins[r].position)),
                                          g.node_id(resolve(g, dests[c].position))));
    }
  }
}

TEST(Matrix, DisconnectedOriginRowIsUnreachable) {
  std::map<std::string, Coordinate> nodes{{"a", {0, 0}}, {"b", {0, 1}}, {"island", {5, 5}}};
  const RoadGraph g(nodes, {{"a", "b", 100, 36}, {"b", "a", 100, 36}});
  const std::vector<Waypoint> origins{{EntityId("o"), NodeRef{"island"}}};
  const std::vector<Waypoint> dests{{EntityId("x"), NodeRef{"a"}}, {EntityId("y"), NodeRef{"b"}}};
  const auto m = build_matrix(g, origins, dests);
  EXPECT_EQ(m.at(0, 0), std::nullopt);
  EXPECT_EQ(m.at(0, 1), std::nullopt);
}

TEST(Matrix, EmptyListsGiveEmptyMatrix) {
  const auto m = build_matrix(make_grid(2), {}, {});
  EXPECT_EQ(m.rows(), 0u);
  EXPECT_EQ(m.cols(), 0u);
}

TEST(Matrix, JsonRoundTripKeepsUnreachable) {
  std::map<std::string, Coordinate> nodes{{"a", {0, 0}}, {"b", {0, 1}}};
  const RoadGraph g(nodes, {{"a", "b", 100, 36}});
  const std::vector<Waypoint> wps{{EntityId("A"), NodeRef{"a"}}, {EntityId("B"), NodeRef{"b"}}};
  const auto m = build_matrix(g, wps, wps);
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
  EXPECT_TRUE(to_json(m)["seconds"][1][0].is_null());
}

class RandomGrids : public ::testing::Test {
 protected:
  std::vector<RoadGraph> graphs() {
    std::mt19937_64 rng(2024);
    std::vector<RoadGraph> out;
    for (int i = 0; i < 50; ++i) out.push_back(scenario::random_grid(rng, 3 + i % 5));
    return out;
  }
};

TEST_F(RandomGrids, DijkstraEqualsBellmanFord) {
  for (const auto& g : graphs()) {
    ASSERT_LE(g.node_count(), 50u);
    for (NodeIndex s = 0; s < g.node_count(); ++s) {
      ASSERT_EQ(shortest_times_from(g, s), bellman_ford(g, s));
    }
  }
}

TEST_F(RandomGrids, TriangleInequality) {
  for (const auto& g : graphs()) {
    std::vector<std::vector<TravelTime>> all;
    for (NodeIndex s = 0; s < g.node_count(); ++s) all.push_back(shortest_times_from(g, s));
    for (NodeIndex a = 0; a < g.node_count(); ++a) {
      EXPECT_EQ(all[a][a], 0);
      for (NodeIndex b = 0; b < g.node_count(); ++b) {
        for (NodeIndex c = 0; c < g.node_count(); ++c) {
          if (all[a][b] && all[b][c]) {
            ASSERT_TRUE(all[a][c]);
            ASSERT_LE(*all[a][c], *all[a][b] + *all[b][c]);
          }
        }
      }
    }
  }
}

TEST_F(RandomGrids, AddingAnEdgeNeverIncreasesTimes) {
  std::mt19937_64 rng(5);
  for (const auto& g : graphs()) {
    const auto n = static_cast<NodeIndex>(g.node_count());
    const auto from = static_cast<NodeIndex>(rng() % n);
    const auto to = static_cast<NodeIndex>(rng() % n);
    const auto h = g.with_edge({g.node_id(from), g.node_id(to), 50, 50});
    for (NodeIndex s = 0; s < n; ++s) {
      const auto before = shortest_times_from(g, s);
      const auto after = shortest_times_from(h, s);
      for (NodeIndex t = 0; t < n; ++t) {
        if (before[t]) {
          ASSERT_TRUE(after[t]);
          EXPECT_LE(*after[t], *before[t]);
        }
      }
    }
  }
}

TEST_F(RandomGrids, MatrixIsDeterministic) {
  for (const auto& g : graphs()) {
    std::vector<Waypoint> wps;
    for (NodeIndex i = 0; i < g.node_count(); i += 3) {
      wps.push_back({EntityId("w" + std::to_string(i)), NodeRef{g.node_id(i)}});
    }
    EXPECT_EQ(to_json(build_matrix(g, wps, wps)).dump(), to_json(build_matrix(g, wps, wps)).dump());
  }
}

}  // namespace
}  // namespace evacrec::road
