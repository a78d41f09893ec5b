#include <filesystem>
#include <future>
#include <thread>

#include <gtest/gtest.h>

#include "evacrec/scenario/scenario.hpp"
#include "evacrec/service/evac_service.hpp"

namespace evacrec::service {
namespace {

const std::filesystem::path kFixtures = EVACREC_FIXTURE_DIR;

std::unique_ptr<EvacService> fixture_service() {
  auto s = scenario::load_scenario(kFixtures / "compiegne-flood.json");
  std::int64_t now = 1000;
  return std::make_unique<EvacService>(s.snapshot, s.graph, s.solver, [now]() mutable { return now++; });
}

std::set<std::string> resources_of(const Json& plan_record) {
  std::set<std::string> out;
  for (const auto& a : plan_record["plan"]["assignments"]) out.insert(a["resource"].get<std::string>());
  return out;
}

TEST(Service, AvailabilityToggle) {
  auto svc = fixture_service();
  const auto r = svc->post_availability(
      {{"driver_id", "p-julien"}, {"vehicle_id", "v-car-1"}, {"available", false}});
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["id"], "mr-julien-car");
  EXPECT_FALSE(r.body["available"].get<bool>());
  EXPECT_EQ(r.body["updated_at_ms"], 1000);

  const auto state = svc->get_state().body;
  for (const auto& mr : state["snapshot"]["mobile_resources"]) {
    if (mr["id"] == "mr-julien-car") EXPECT_FALSE(mr["available"].get<bool>());
  }
}

TEST(Service, AvailabilityErrors) {
  auto svc = fixture_service();
  EXPECT_EQ(svc->post_availability({{"driver_id", "p-ghost"}, {"vehicle_id", "v-car-1"},
                                    {"available", true}, {"position", {49.41, 2.82}}})
                .status,
            404);
  EXPECT_EQ(svc->post_availability({{"driver_id", "p-julien"}}).status, 400);
  const auto busy = svc->post_availability({{"driver_id", "p-julien"}, {"vehicle_id", "v-car-2"},
                                            {"available", true}, {"position", {49.41, 2.82}}});
  EXPECT_EQ(busy.status, 409);
  EXPECT_EQ(busy.body["code"], "AlreadyPaired");
}

TEST(Service, PutRescuePoint) {
  auto svc = fixture_service();
  const Json body{{"evacuees", 7}, {"wheelchair_evacuees", 1}, {"priority", 4}};
  const auto first = svc->put_rescue_point("rp-quai-oise", body);
  ASSERT_EQ(first.status, 200) << first.body.dump();
  EXPECT_EQ(first.body["evacuees"], 7);
  EXPECT_EQ(first.body["node"], "quai_oise");
  const auto revision = svc->get_state().body["revision"];
  EXPECT_EQ(svc->put_rescue_point("rp-quai-oise", body).body, first.body);
  EXPECT_EQ(svc->get_state().body["revision"], revision);

  const auto bad = svc->put_rescue_point(
      "rp-quai-oise", {{"evacuees", 1}, {"wheelchair_evacuees", 2}, {"priority", 4}});
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["code"], "SchemaViolation");
  EXPECT_EQ(svc->put_rescue_point("rp-x", {{"id", "rp-y"}}).status, 400);
}

TEST(Service, PutShelterNeedsPlaceWhenNew) {
  auto svc = fixture_service();
  EXPECT_EQ(svc->put_shelter("sh-new", {{"capacity", 4}}).status, 400);
  EXPECT_EQ(svc->put_shelter("sh-new", {{"capacity", 4}, {"node", "depot"}}).status, 200);
}

TEST(Service, RecommendationOnFixture) {
  auto svc = fixture_service();
  const auto r = svc->post_recommendation();
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["id"], "plan-0001");
  EXPECT_EQ(r.body["state"], "Proposed");
  EXPECT_EQ(r.body["round"], 1);
  EXPECT_EQ(r.body["plan"]["status"], "FullCoverage");
  EXPECT_EQ(r.body["plan"]["assignments"].size(), 3u);
  EXPECT_EQ(r.body["plan"]["objective"]["total_time_s"], 226);
  EXPECT_EQ(svc->get_plan("plan-0001").body, r.body);
  EXPECT_EQ(svc->get_plan("plan-9999").status, 404);
}

TEST(Service, NoResourcesGivesEmptyPlan) {
  auto svc = fixture_service();
  for (auto [d, v] : {std::pair{"p-claire", "v-minibus"}, {"p-julien", "v-car-1"},
                      {"p-lucas", "v-car-2"}, {"p-marc", "v-boat"}}) {
    ASSERT_EQ(svc->post_availability({{"driver_id", d}, {"vehicle_id", v}, {"available", false}})
                  .status,
              200);
  }
  const auto r = svc->post_recommendation();
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["plan"]["status"], "Empty");
  EXPECT_TRUE(r.body["plan"]["assignments"].empty());
}

TEST(Service, SecondConcurrentRecommendationIsBusy) {
  auto svc = fixture_service();
  std::promise<void> entered, release;
  auto release_future = release.get_future().share();
  svc->set_before_solve_hook([&, release_future] {
    entered.set_value();
    release_future.wait();
  });
  auto first = std::async(std::launch::async, [&] { return svc->post_recommendation(); });
  entered.get_future().wait();
  const auto second = svc->post_recommendation();
  release.set_value();
  EXPECT_EQ(second.status, 503);
  EXPECT_EQ(second.body["code"], "Busy");
  EXPECT_EQ(first.get().status, 200);
}

TEST(Service, StalePlanIsRefused) {
  auto svc = fixture_service();
  const auto plan = svc->post_recommendation().body;
  ASSERT_TRUE(resources_of(plan).contains("mr-lucas-car"));
  svc->post_availability({{"driver_id", "p-lucas"}, {"vehicle_id", "v-car-2"}, {"available", false}});
  const auto r = svc->accept_plan(plan["id"]);
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body["code"], "StalePlan");
  EXPECT_EQ(r.body["details"]["unavailable_resources"], Json::array({"mr-lucas-car"}));
}

TEST(Service, AcceptCommitsAndNextRoundExcludesCommitted) {
  auto svc = fixture_service();
  const auto first = svc->post_recommendation().body;
  const auto other = svc->post_recommendation().body;
  const auto accepted = svc->accept_plan(first["id"]);
  ASSERT_EQ(accepted.status, 200) << accepted.body.dump();
  EXPECT_EQ(accepted.body["state"], "Accepted");
  EXPECT_EQ(svc->get_plan(other["id"]).body["state"], "Superseded");
  EXPECT_EQ(svc->accept_plan(first["id"]).status, 409);

  const auto state = svc->get_state().body;
  EXPECT_EQ(state["round"], 2);
  for (const auto& sh : state["snapshot"]["shelters"]) {
    if (sh["id"] == "sh-ecole-nord") EXPECT_EQ(sh["capacity"], 3);
    if (sh["id"] == "sh-gymnase-ouest") EXPECT_EQ(sh["capacity"], 8);
  }

  ASSERT_EQ(svc->put_rescue_point("rp-quai-oise", {{"evacuees", 4}, {"wheelchair_evacuees", 0},
                                                   {"priority", 5}})
                .status,
            200);
  const auto next = svc->post_recommendation().body;
  EXPECT_EQ(next["round"], 2);
  ASSERT_EQ(next["plan"]["assignments"].size(), 1u);
  const auto& a = next["plan"]["assignments"][0];
  EXPECT_EQ(a["resource"], "mr-julien-car");
  EXPECT_EQ(a["rescue_point"], "rp-quai-oise");
  EXPECT_EQ(a["shelter"], "sh-gymnase-ouest");
  EXPECT_EQ(a["evacuees_loaded"], 4);
  for (const auto& r : resources_of(first)) EXPECT_FALSE(resources_of(next).contains(r));
}

TEST(Service, StateIsStableBetweenReads) {
  auto svc = fixture_service();
  svc->post_recommendation();
  EXPECT_EQ(svc->get_state().body.dump(), svc->get_state().body.dump());
}

TEST(Service, MatricesAreReusedWhilePositionsHold) {
  auto svc = fixture_service();
  svc->post_recommendation();
  svc->post_availability({{"driver_id", "p-julien"}, {"vehicle_id", "v-car-1"}, {"available", false}});
  svc->post_recommendation();
  EXPECT_EQ(svc->matrix_builds(), 1u);
  svc->post_availability({{"driver_id", "p-julien"}, {"vehicle_id", "v-car-1"}, {"available", true},
                          {"position", {49.4129, 2.8245}}});
  svc->post_recommendation();
  EXPECT_EQ(svc->matrix_builds(), 2u);
}

TEST(Service, ErrorStatusMapping) {
  EXPECT_EQ(http_status(ErrorCode::kUnknownEntity), 404);
  EXPECT_EQ(http_status(ErrorCode::kStalePlan), 409);
  EXPECT_EQ(http_status(ErrorCode::kSchemaViolation), 400);
  EXPECT_EQ(http_status(ErrorCode::kBusy), 503);
  const auto r = error_response(ErrorCode::kBadRequest, "nope");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["code"], "BadRequest");
  EXPECT_TRUE(r.body["details"].is_object());
}

}  // namespace
}  // namespace evacrec::service
