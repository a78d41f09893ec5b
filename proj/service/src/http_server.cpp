#include "evacrec/service/http_server.hpp"

#include <cstdlib>
#include <iostream>

#include <httplib.h>

#include "evacrec/error.hpp"
#include "evacrec/kb/snapshot_io.hpp"

namespace evacrec::service {

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

// Parses the request body; on failure answers 400 and returns nullopt.
std::optional<Json> body_of(const httplib::Request& req, httplib::Response& res) {
  try {
    return req.body.empty() ? Json::object() : Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    reply(res, error_response(ErrorCode::kBadRequest,
                              std::string("request body is not valid JSON: ") + e.what()));
    return std::nullopt;
  }
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(EvacService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;

  srv.Post("/api/availability", [&service](const httplib::Request& req, httplib::Response& res) {
    if (auto body = body_of(req, res)) reply(res, service.post_availability(*body));
  });
  srv.Put(R"(/api/rescue-points/([^/]+))",
          [&service](const httplib::Request& req, httplib::Response& res) {
            if (auto body = body_of(req, res)) {
              reply(res, service.put_rescue_point(req.matches[1], *body));
            }
          });
  srv.Put(R"(/api/shelters/([^/]+))",
          [&service](const httplib::Request& req, httplib::Response& res) {
            if (auto body = body_of(req, res)) reply(res, service.put_shelter(req.matches[1], *body));
          });
  srv.Post("/api/recommendations", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.post_recommendation());
  });
  srv.Get(R"(/api/plans/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.get_plan(req.matches[1]));
  });
  srv.Post(R"(/api/plans/([^/]+)/accept)",
           [&service](const httplib::Request& req, httplib::Response& res) {
             reply(res, service.accept_plan(req.matches[1]));
           });
  srv.Get("/api/state", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.get_state());
  });

  srv.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(Json{{"code", "Internal"}, {"message", message}, {"details", Json::object()}}
                            .dump(),
                        "application/json");
      });

  if (static_dir) srv.set_mount_point("/", static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

int port_from_env(int fallback) {
  if (const char* env = std::getenv("EVACREC_PORT")) {
    char* end = nullptr;
    const long port = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && port > 0 && port < 65536) return static_cast<int>(port);
  }
  return fallback;
}

int run_server(const ServeOptions& options) {
  KnowledgeSnapshot snapshot;
  road::RoadGraph graph;
  scenario::SolverConfig config;
  try {
    if (options.scenario) {
      const Json j = read_json_file(*options.scenario);
      Json without_graph = j;
      if (options.graph) without_graph["graph"] = options.graph->string();
      auto s = scenario::scenario_from_json(
          without_graph, options.graph ? std::filesystem::current_path()
                                       : options.scenario->parent_path());
      snapshot = std::move(s.snapshot);
      graph = std::move(s.graph);
      config = s.solver;
    } else if (options.graph) {
      graph = road::load_graph(*options.graph);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
    return e.code() == ErrorCode::kIoError ? 1 : 2;
  }
  if (options.exact_bound) config.exact_bound = *options.exact_bound;

  EvacService service(std::move(snapshot), std::move(graph), config);
  HttpServer server(service, options.console_dir);
  const int port = server.bind(options.host, options.port);
  if (port < 0) {
    std::cerr << "error: cannot bind " << options.host << ':' << options.port << '\n';
    return 1;
  }
  std::cout << "listening on " << options.host << ':' << port << std::endl;
  return server.listen() ? 0 : 1;
}

}  // namespace evacrec::service
