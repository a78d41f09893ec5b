#include "evacrec/service/evac_service.hpp"

#include <chrono>
#include <cstdio>

#include "evacrec/error.hpp"
#include "evacrec/kb/snapshot_io.hpp"
#include "evacrec/rec/solver.hpp"

namespace evacrec::service {

namespace {

std::int64_t system_now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

Json details_of(const Error& e) {
  Json d = Json::object();
  if (!e.details().empty()) d["violations"] = e.details();
  return d;
}

// Clears the in-flight flag when a recommendation run ends.
class SolveSlot {
 public:
  explicit SolveSlot(std::atomic<bool>& flag) : flag_(flag) {
    acquired_ = !flag_.exchange(true);
  }
  ~SolveSlot() {
    if (acquired_) flag_.store(false);
  }
  SolveSlot(const SolveSlot&) = delete;
  SolveSlot& operator=(const SolveSlot&) = delete;
  bool acquired() const noexcept { return acquired_; }

 private:
  std::atomic<bool>& flag_;
  bool acquired_ = false;
};

// Body of a PUT with the path id filled in and, when the body omits it, the
// stored position kept.
Json place_body(const std::string& id, const Json& body, const Place* existing) {
  if (!body.is_object()) {
    throw Error(ErrorCode::kBadRequest, "request body must be a JSON object");
  }
  if (body.contains("id") && body.at("id") != id) {
    throw Error(ErrorCode::kBadRequest, "body id does not match the path id");
  }
  Json j = body;
  j["id"] = id;
  if (existing && !j.contains("position") && !j.contains("node")) {
    Json pos = to_json(existing->position);
    for (auto& [key, value] : pos.items()) j[key] = value;
  }
  return j;
}

}  // namespace

std::string_view to_string(PlanState state) noexcept {
  switch (state) {
    case PlanState::kProposed: return "Proposed";
    case PlanState::kAccepted: return "Accepted";
    case PlanState::kSuperseded: return "Superseded";
  }
  return "Proposed";
}

Json to_json(const PlanRecord& r) {
  return {{"id", r.id},
          {"state", to_string(r.state)},
          {"instance_fingerprint", r.instance_fingerprint},
          {"created_at_ms", r.created_at_ms},
          {"round", r.round},
          {"plan", rec::to_json(r.plan)},
          {"rationale", rec::to_json(r.rationale)}};
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUnknownEntity: return 404;
    case ErrorCode::kLicenseMismatch:
    case ErrorCode::kAlreadyPaired:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kStalePlan:
    case ErrorCode::kStaleMatrix:
    case ErrorCode::kInvalidState:
    case ErrorCode::kMatrixIncomplete:
      return 409;
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kBadRequest:
    case ErrorCode::kGraphViolation:
    case ErrorCode::kUnknownNode:
      return 400;
    case ErrorCode::kBusy: return 503;
    case ErrorCode::kIoError:
    case ErrorCode::kEmptyGraph:
    case ErrorCode::kInstanceTooLarge:
      return 500;
  }
  return 500;
}

Response error_response(ErrorCode code, const std::string& message, Json details) {
  return {http_status(code),
          {{"code", error_code_name(code)}, {"message", message}, {"details", std::move(details)}}};
}

Response error_response(const Error& e) {
  return error_response(e.code(), e.what(), details_of(e));
}

EvacService::EvacService(KnowledgeSnapshot snapshot, road::RoadGraph graph,
                         scenario::SolverConfig config, Clock clock)
    : graph_(std::move(graph)),
      config_(config),
      clock_(clock ? std::move(clock) : Clock(system_now_ms)),
      kb_(std::move(snapshot)) {}

void EvacService::set_before_solve_hook(std::function<void()> hook) {
  std::unique_lock lock(mutex_);
  before_solve_ = std::move(hook);
}

Response EvacService::post_availability(const Json& body) {
  try {
    if (!body.is_object() || !body.contains("driver_id") || !body.at("driver_id").is_string() ||
        !body.contains("vehicle_id") || !body.at("vehicle_id").is_string() ||
        !body.contains("available") || !body.at("available").is_boolean()) {
      return error_response(ErrorCode::kBadRequest,
                            "expected {driver_id: string, vehicle_id: string, available: bool}");
    }
    const EntityId driver(body.at("driver_id").get<std::string>());
    const EntityId vehicle(body.at("vehicle_id").get<std::string>());
    const bool available = body.at("available").get<bool>();
    const std::optional<Position> position = position_from_json(body);

    std::unique_lock lock(mutex_);
    auto resource = kb_.find_pairing(driver, vehicle);
    if (!resource) {
      if (!position) {
        return error_response(ErrorCode::kBadRequest,
                              "a new driver/vehicle pairing needs a position");
      }
      resource = kb_.pair_mobile_resource(driver, vehicle, *position).id;
    }
    const auto& stored = kb_.set_availability(*resource, available, position, clock_());
    return {200, to_json(stored)};
  } catch (const Error& e) {
    return error_response(e);
  }
}

Response EvacService::put_rescue_point(const std::string& id, const Json& body) {
  try {
    std::unique_lock lock(mutex_);
    const auto& points = kb_.snapshot().rescue_points;
    const auto it = points.find(EntityId(id));
    const Json j = place_body(id, body, it == points.end() ? nullptr : &it->second.place);
    const auto& stored = kb_.put_rescue_point(rescue_point_from_json(j));
    return {200, to_json(stored)};
  } catch (const Error& e) {
    return error_response(e);
  }
}

Response EvacService::put_shelter(const std::string& id, const Json& body) {
  try {
    std::unique_lock lock(mutex_);
    const auto& shelters = kb_.snapshot().shelters;
    const auto it = shelters.find(EntityId(id));
    const Json j = place_body(id, body, it == shelters.end() ? nullptr : &it->second.place);
    const auto& stored = kb_.put_shelter(shelter_from_json(j));
    return {200, to_json(stored)};
  } catch (const Error& e) {
    return error_response(e);
  }
}

std::shared_ptr<const scenario::MatrixFile> EvacService::matrices_for(
    const KnowledgeSnapshot& snapshot) {
  const auto fingerprint = scenario::matrix_fingerprint(snapshot, graph_);
  {
    std::lock_guard lock(cache_mutex_);
    if (cache_ && cache_->fingerprint == fingerprint) return cache_;
  }
  auto built = std::make_shared<scenario::MatrixFile>();
  built->fingerprint = fingerprint;
  const auto resources = rec::resource_waypoints(snapshot, false);
  const auto rps = rec::rescue_point_waypoints(snapshot);
  const auto shelters = rec::shelter_waypoints(snapshot);
  try {
    built->to_rescue_points = road::build_matrix(graph_, resources, rps);
    built->to_shelters = road::build_matrix(graph_, rps, shelters);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnknownNode || e.code() == ErrorCode::kEmptyGraph) {
      throw Error(ErrorCode::kMatrixIncomplete,
                  std::string("cannot place every entity on the road graph: ") + e.what());
    }
    throw;
  }
  ++matrix_builds_;
  std::lock_guard lock(cache_mutex_);
  cache_ = built;
  return built;
}

Response EvacService::post_recommendation() {
  SolveSlot slot(solving_);
  if (!slot.acquired()) {
    return error_response(ErrorCode::kBusy, "a recommendation is already being computed");
  }
  try {
    KnowledgeSnapshot frozen;
    std::function<void()> hook;
    {
      std::shared_lock lock(mutex_);
      frozen = kb_.snapshot();
      hook = before_solve_;
    }
    if (hook) hook();

    const auto matrices = matrices_for(frozen);
    const auto instance = scenario::instance_from_matrices(frozen, *matrices, config_);
    PlanRecord record;
    record.plan = rec::solve(instance, {config_.exact_bound});
    record.rationale = rec::explain(instance, record.plan);
    record.instance_fingerprint =
        rec::instance_fingerprint(frozen, config_.constraints, config_.objective);

    std::unique_lock lock(mutex_);
    char id[32];
    std::snprintf(id, sizeof id, "plan-%04d", next_plan_++);
    record.id = id;
    record.round = round_;
    record.created_at_ms = clock_();
    const auto& stored = plans_.emplace(record.id, std::move(record)).first->second;
    return {200, to_json(stored)};
  } catch (const Error& e) {
    return error_response(e);
  }
}

Response EvacService::get_plan(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = plans_.find(id);
  if (it == plans_.end()) {
    return error_response(ErrorCode::kUnknownEntity, "no plan '" + id + "'");
  }
  return {200, to_json(it->second)};
}

Response EvacService::accept_plan(const std::string& id) {
  try {
    std::unique_lock lock(mutex_);
    const auto it = plans_.find(id);
    if (it == plans_.end()) {
      return error_response(ErrorCode::kUnknownEntity, "no plan '" + id + "'");
    }
    PlanRecord& record = it->second;
    if (record.state != PlanState::kProposed) {
      return error_response(ErrorCode::kInvalidState,
                            "plan '" + id + "' is " + std::string(to_string(record.state)));
    }

    const auto& snap = kb_.snapshot();
    if (rec::instance_fingerprint(snap, config_.constraints, config_.objective) !=
        record.instance_fingerprint) {
      Json withdrawn = Json::array();
      for (const auto& a : record.plan.assignments) {
        const auto r = snap.mobile_resources.find(a.resource);
        if (r == snap.mobile_resources.end() || !r->second.selectable()) {
          withdrawn.push_back(a.resource.str());
        }
      }
      return error_response(ErrorCode::kStalePlan,
                            "the situation changed since plan '" + id + "' was proposed",
                            {{"unavailable_resources", std::move(withdrawn)}});
    }

    // Apply everything on a copy so that a failure leaves the store untouched.
    KnowledgeBase next = kb_;
    for (const auto& a : record.plan.assignments) {
      next.set_committed(a.resource, true);
      Shelter shelter = next.snapshot().shelters.at(a.shelter);
      shelter.capacity -= a.evacuees_loaded;
      next.put_shelter(shelter);
      RescuePoint rp = next.snapshot().rescue_points.at(a.rescue_point);
      rp.evacuees -= a.evacuees_loaded;
      rp.wheelchair_evacuees -= a.wheelchair_loaded;
      next.put_rescue_point(rp);
    }
    kb_ = std::move(next);

    record.state = PlanState::kAccepted;
    for (auto& [other_id, other] : plans_) {
      if (other.state == PlanState::kProposed) other.state = PlanState::kSuperseded;
    }
    ++round_;
    return {200, to_json(record)};
  } catch (const Error& e) {
    return error_response(e);
  }
}

Response EvacService::get_state() const {
  std::shared_lock lock(mutex_);
  Json plans = Json::array();
  for (const auto& [id, record] : plans_) plans.push_back(to_json(record));
  return {200,
          {{"snapshot", to_json(kb_.snapshot())},
           {"plans", std::move(plans)},
           {"round", round_},
           {"revision", kb_.revision()}}};
}

}  // namespace evacrec::service
