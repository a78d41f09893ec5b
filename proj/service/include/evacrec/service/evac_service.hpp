#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "evacrec/error.hpp"
#include "evacrec/kb/knowledge_base.hpp"
#include "evacrec/rec/explain.hpp"
#include "evacrec/rec/plan.hpp"
#include "evacrec/road/road_graph.hpp"
#include "evacrec/scenario/matrix_file.hpp"
#include "evacrec/scenario/scenario.hpp"

namespace evacrec::service {

using Json = nlohmann::json;

// Transport-independent reply: HTTP status plus JSON body. Errors carry
// {"code", "message", "details"}.
struct Response {
  int status = 200;
  Json body;
};

enum class PlanState { kProposed, kAccepted, kSuperseded };
std::string_view to_string(PlanState state) noexcept;

struct PlanRecord {
  std::string id;
  PlanState state = PlanState::kProposed;
  std::string instance_fingerprint;
  std::int64_t created_at_ms = 0;
  int round = 0;
  rec::RecommendationPlan plan;
  rec::Explanation rationale;
};

Json to_json(const PlanRecord& record);

// HTTP status for a library error code.
int http_status(ErrorCode code) noexcept;
Response error_response(const Error& error);
Response error_response(ErrorCode code, const std::string& message, Json details = Json::object());

// One crisis: the knowledge base, the road graph, proposed and accepted
// plans. All handlers are safe to call concurrently. At most one
// recommendation runs at a time; a second one is refused with 503 Busy.
class EvacService {
 public:
  using Clock = std::function<std::int64_t()>;  // epoch milliseconds

  EvacService(KnowledgeSnapshot snapshot, road::RoadGraph graph,
              scenario::SolverConfig config = {}, Clock clock = {});

  Response post_availability(const Json& body);
  Response put_rescue_point(const std::string& id, const Json& body);
  Response put_shelter(const std::string& id, const Json& body);
  Response post_recommendation();
  Response get_plan(const std::string& id) const;
  Response accept_plan(const std::string& id);
  Response get_state() const;

  // Runs inside post_recommendation after the snapshot is frozen and before
  // the solver starts.
  void set_before_solve_hook(std::function<void()> hook);

  // Number of travel-time matrices built so far.
  std::uint64_t matrix_builds() const noexcept { return matrix_builds_.load(); }

 private:
  std::shared_ptr<const scenario::MatrixFile> matrices_for(const KnowledgeSnapshot& snapshot);

  road::RoadGraph graph_;
  scenario::SolverConfig config_;
  Clock clock_;

  mutable std::shared_mutex mutex_;  // guards kb_, plans_, round_, next_plan_
  KnowledgeBase kb_;
  std::map<std::string, PlanRecord> plans_;
  int round_ = 1;
  int next_plan_ = 1;

  std::atomic<bool> solving_{false};
  std::function<void()> before_solve_;

  std::mutex cache_mutex_;
  std::shared_ptr<const scenario::MatrixFile> cache_;
  std::atomic<std::uint64_t> matrix_builds_{0};
};

}  // namespace evacrec::service
