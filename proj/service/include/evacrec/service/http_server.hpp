#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "evacrec/service/evac_service.hpp"

namespace evacrec::service {

// cpp-httplib front end for an EvacService:
//   POST /api/availability
//   PUT  /api/rescue-points/{id}
//   PUT  /api/shelters/{id}
//   POST /api/recommendations
//   GET  /api/plans/{id}
//   POST /api/plans/{id}/accept
//   GET  /api/state
// plus, optionally, a static directory served at "/".
class HttpServer {
 public:
  explicit HttpServer(EvacService& service,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port; port 0 picks a free one. Returns -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ServeOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::optional<std::filesystem::path> scenario;
  std::optional<std::filesystem::path> graph;
  std::optional<int> exact_bound;
  std::optional<std::filesystem::path> console_dir;
};

// Port from EVACREC_PORT when set and valid, otherwise `fallback`.
int port_from_env(int fallback);

// Loads scenario and graph, serves until the process is stopped. Returns a
// process exit code.
int run_server(const ServeOptions& options);

}  // namespace evacrec::service
