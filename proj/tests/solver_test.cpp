#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "evacrec/rec/feasibility.hpp"
#include "evacrec/rec/oracle.hpp"
#include "evacrec/rec/solver.hpp"
#include "evacrec/scenario/random_instance.hpp"
#include "evacrec/scenario/scenario.hpp"
#include "support/builders.hpp"

namespace evacrec::rec {
namespace {

using namespace evacrec::testing;

std::vector<std::tuple<std::string, std::string, std::string>> triples(const RecommendationPlan& p) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& a : p.assignments) {
    out.emplace_back(a.resource.str(), a.rescue_point.str(), a.shelter.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProblemInstance> batch(std::uint64_t seed, int count) {
  std::vector<ProblemInstance> out;
  for (const auto& s : scenario::random_batch(seed, count)) out.push_back(scenario::make_instance(s));
  return out;
}

TEST(Solver, NothingToDo) {
  const auto plan = solve(instance({}, {}, {}, {}, {}));
  EXPECT_EQ(plan.objective, (Objective{0, 0, 0}));
  EXPECT_EQ(plan.status, CoverageStatus::kEmpty);
  EXPECT_TRUE(plan.assignments.empty());
}

TEST(Solver, NoResourcesLeavesDemandUncovered) {
  const auto plan = solve(instance({}, {rescue_point("p", 3, 0, 4)}, {shelter("s", 9)}, {}, {{10}}));
  EXPECT_EQ(plan.objective, (Objective{12, 0, 0}));
  EXPECT_EQ(plan.status, CoverageStatus::kEmpty);
  EXPECT_EQ(plan.uncovered.at(EntityId("p")), (Shortfall{3, 0}));
}

TEST(Solver, SingleTrip) {
  const auto plan = solve(instance({member("r", 5)}, {rescue_point("p", 3)}, {shelter("s", 9)},
                                   {{300}}, {{200}}));
  ASSERT_EQ(plan.assignments.size(), 1u);
  EXPECT_EQ(plan.assignments[0],
            (Assignment{EntityId("r"), EntityId("p"), EntityId("s"), 3, 0, 300, 200}));
  EXPECT_EQ(plan.objective, (Objective{0, 500, 1}));
  EXPECT_EQ(plan.status, CoverageStatus::kFullCoverage);
}

TEST(Solver, EqualTimePrefersFewerVehicles) {
  // a alone: 200 + 100. b and c together: (50 + 100) * 2. Both total 300 s.
  const auto inst = instance({member("a", 5), member("b", 3), member("c", 3)},
                             {rescue_point("p", 4)}, {shelter("s", 9)},
                             {{200}, {50}, {50}}, {{100}});
  const auto plan = solve(inst);
  EXPECT_EQ(plan.objective, (Objective{0, 300, 1}));
  EXPECT_EQ(plan.assignments[0].resource.str(), "a");
}

TEST(Solver, ScarceSeatsGoToHigherPriority) {
  const auto inst = instance({member("r", 5)},
                             {rescue_point("near", 4, 0, 1), rescue_point("far", 4, 0, 5)},
                             {shelter("s", 9)}, {{10, 500}}, {{10}, {10}});
  const auto plan = solve(inst);
  ASSERT_EQ(plan.assignments.size(), 1u);
  EXPECT_EQ(plan.assignments[0].rescue_point.str(), "far");
  EXPECT_EQ(plan.objective, (Objective{4, 510, 1}));
  EXPECT_EQ(plan.status, CoverageStatus::kPartialCoverage);
}

TEST(Solver, WheelchairUserNeedsSlot) {
  const auto inst = instance({member("car", 5), member("van", 4, 1)},
                             {rescue_point("p", 1, 1)}, {shelter("s", 9)}, {{10}, {90}}, {{10}});
  const auto plan = solve(inst);
  ASSERT_EQ(plan.assignments.size(), 1u);
  EXPECT_EQ(plan.assignments[0].resource.str(), "van");
  EXPECT_EQ(plan.assignments[0].wheelchair_loaded, 1);
}

TEST(Solver, ShelterCapacitySplitsTrips) {
  const auto inst = instance({member("a", 5), member("b", 5)}, {rescue_point("p", 6)},
                             {shelter("small", 4), shelter("big", 3)}, {{10}, {20}},
                             {{10, 30}});
  // a loads 4 and only fits the small shelter; b takes the other 2 to big.
  const auto plan = solve(inst);
  ASSERT_EQ(plan.assignments.size(), 2u);
  EXPECT_EQ(plan.objective, (Objective{0, 70, 2}));
  EXPECT_TRUE(check_feasible(inst, plan).feasible());
  EXPECT_EQ(plan.objective.uncovered_weight, 0);
}

class RandomBatch : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { instances_ = new std::vector<ProblemInstance>(batch(7, 80)); }
  static void TearDownTestSuite() { delete instances_; }
  static const std::vector<ProblemInstance>& instances() { return *instances_; }

 private:
  static std::vector<ProblemInstance>* instances_;
};
std::vector<ProblemInstance>* RandomBatch::instances_ = nullptr;

TEST_F(RandomBatch, MatchesOracle) {
  for (const auto& inst : instances()) {
    const auto plan = solve(inst);
    const auto oracle = oracle_optimum(inst);
    ASSERT_EQ(plan.objective, oracle.best.objective);
    ASSERT_EQ(plan, oracle.best);
  }
}

TEST_F(RandomBatch, MatchesOracleUnderVariants) {
  int i = 0;
  for (auto inst : instances()) {
    switch (i++ % 4) {
      case 0: inst.time_objective = TimeObjective::kMakespan; break;
      case 1: inst.constraints.enforce_wheelchair = false; break;
      case 2: inst.constraints.enforce_shelter_capacity = false; break;
      case 3: inst.constraints.enforce_terrain = false; break;
    }
    ASSERT_EQ(solve(inst), oracle_optimum(inst).best) << "variant " << (i - 1) % 4;
  }
}

TEST_F(RandomBatch, PlansAreFeasible) {
  for (const auto& inst : instances()) {
    const auto report = check_feasible(inst, solve(inst));
    ASSERT_TRUE(report.feasible()) << to_json(report).dump();
  }
}

TEST_F(RandomBatch, NoOptimalPlanUsesFewerVehicles) {
  for (const auto& inst : instances()) {
    const auto plan = solve(inst);
    for (const auto& other : enumerate_all(inst)) {
      if (other.objective.uncovered_weight == plan.objective.uncovered_weight &&
          other.objective.total_time == plan.objective.total_time) {
        ASSERT_GE(other.objective.vehicles_used, plan.objective.vehicles_used);
      }
    }
  }
}

TEST_F(RandomBatch, AddingAResourceNeverHurts) {
  for (const auto& inst : instances()) {
    if (inst.resources.size() >= static_cast<std::size_t>(kOracleMaxResources)) continue;
    auto bigger = inst;
    bigger.resources.push_back(member("zz-extra", 5));
    std::vector<EntityId> origins = inst.times_to_rp.origins();
    origins.push_back(EntityId("zz-extra"));
    std::vector<road::TravelTime> entries;
    for (std::size_t r = 0; r < inst.times_to_rp.rows(); ++r) {
      for (std::size_t c = 0; c < inst.times_to_rp.cols(); ++c) {
        entries.push_back(inst.times_to_rp.at(r, c));
      }
    }
    for (std::size_t c = 0; c < inst.times_to_rp.cols(); ++c) entries.push_back(60);
    bigger.times_to_rp =
        road::TravelTimeMatrix(origins, inst.times_to_rp.destinations(), std::move(entries));
    ASSERT_LE(solve(bigger).objective, solve(inst).objective);
  }
}

road::TravelTimeMatrix reorder(const road::TravelTimeMatrix& m, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) {
  std::vector<EntityId> origins, dests;
  for (auto r : rows) origins.push_back(m.origins()[r]);
  for (auto c : cols) dests.push_back(m.destinations()[c]);
  std::vector<road::TravelTime> entries;
  for (auto r : rows) {
    for (auto c : cols) entries.push_back(m.at(r, c));
  }
  return road::TravelTimeMatrix(origins, dests, std::move(entries));
}

template <typename T>
std::vector<std::size_t> shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<T> out;
  for (auto i : perm) out.push_back(v[i]);
  v = std::move(out);
  return perm;
}

std::vector<std::size_t> index_order(const std::vector<EntityId>& ids,
                                     const std::vector<EntityId>& wanted) {
  std::vector<std::size_t> out;
  for (const auto& w : wanted) {
    out.push_back(static_cast<std::size_t>(std::find(ids.begin(), ids.end(), w) - ids.begin()));
  }
  return out;
}

TEST_F(RandomBatch, InputOrderDoesNotMatter) {
  std::mt19937_64 rng(99);
  for (const auto& inst : instances()) {
    auto shuffled = inst;
    shuffle_in_place(shuffled.resources, rng);
    shuffle_in_place(shuffled.rescue_points, rng);
    shuffle_in_place(shuffled.shelters, rng);
    std::vector<EntityId> r_ids, p_ids, s_ids;
    for (const auto& r : shuffled.resources) r_ids.push_back(r.id);
    for (const auto& p : shuffled.rescue_points) p_ids.push_back(p.id());
    for (const auto& s : shuffled.shelters) s_ids.push_back(s.id());
    shuffled.times_to_rp =
        reorder(inst.times_to_rp, index_order(inst.times_to_rp.origins(), r_ids),
                index_order(inst.times_to_rp.destinations(), p_ids));
    shuffled.times_rp_to_shelter =
        reorder(inst.times_rp_to_shelter, index_order(inst.times_rp_to_shelter.origins(), p_ids),
                index_order(inst.times_rp_to_shelter.destinations(), s_ids));
    ASSERT_EQ(to_json(solve(shuffled)).dump(), to_json(solve(inst)).dump());
  }
}

road::TravelTimeMatrix scaled(const road::TravelTimeMatrix& m, Seconds k) {
  std::vector<road::TravelTime> entries;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto t = m.at(r, c);
      entries.push_back(t ? road::TravelTime(*t * k) : std::nullopt);
    }
  }
  return road::TravelTimeMatrix(m.origins(), m.destinations(), std::move(entries));
}

TEST_F(RandomBatch, ScalingTimesKeepsTheChoice) {
  for (const auto& inst : instances()) {
    auto slow = inst;
    slow.times_to_rp = scaled(inst.times_to_rp, 3);
    slow.times_rp_to_shelter = scaled(inst.times_rp_to_shelter, 3);
    const auto a = solve(inst);
    const auto b = solve(slow);
    ASSERT_EQ(triples(a), triples(b));
    ASSERT_EQ(b.objective.total_time, 3 * a.objective.total_time);
  }
}

TEST_F(RandomBatch, HeuristicAboveBound) {
  for (const auto& inst : instances()) {
    if (inst.resources.size() <= 2) continue;
    const auto heuristic = solve(inst, {.exact_bound = 2});
    const auto exact = solve(inst);
    EXPECT_EQ(heuristic.solver, SolverKind::kHeuristic);
    ASSERT_TRUE(heuristic.lower_bound_s.has_value());
    EXPECT_LE(*heuristic.lower_bound_s, exact.objective.total_time);
    EXPECT_LE(exact.objective, heuristic.objective);
    EXPECT_TRUE(check_feasible(inst, heuristic).feasible());
  }
}

TEST(Solver, ExactPlansCarryNoBound) {
  const auto plan = solve(instance({member("r", 5)}, {rescue_point("p", 3)}, {shelter("s", 9)},
                                   {{300}}, {{200}}));
  EXPECT_EQ(plan.solver, SolverKind::kExact);
  EXPECT_FALSE(plan.lower_bound_s.has_value());
  EXPECT_FALSE(to_json(plan).contains("lower_bound_s"));
}

}  // namespace
}  // namespace evacrec::rec
