#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "hiproof/optimizers.hpp"

namespace hiproof::service {

struct ServiceConfig {
  std::string cors_origin = "*";
  std::size_t max_body_bytes = 64 * 1024;
  std::size_t max_grid_axis = 501;
  InputLimits limits;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

using Query = std::map<std::string, std::string>;

/// Request handlers without any transport. Every method is const and touches
/// only its arguments and the immutable config, so one instance may serve
/// any number of threads.
class Api {
 public:
  explicit Api(ServiceConfig config = {}) : config_(std::move(config)) {}

  Response optimize(std::string_view body) const;  // POST /api/v1/optimize
  Response score(std::string_view body) const;     // POST /api/v1/score
  Response contour(const Query& query) const;      // GET  /api/v1/contour
  Response healthz() const;                        // GET  /healthz

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
};

/// ApiError body: {"code": ..., "message": ..., "field": ...}.
std::string error_body(std::string_view code, std::string_view message, std::string_view field = {});

/// HTTP/1.1 front for Api.
class Server {
 public:
  explicit Server(ServiceConfig config = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop() is called.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hiproof::service
