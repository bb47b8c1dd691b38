#include "service.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <httplib.h>

#include "hiproof/casestudy.hpp"
#include "hiproof/json_io.hpp"
#include "hiproof/oracle.hpp"

namespace hiproof::service {

namespace {

using io::Json;

// Library field names mapped to the names clients send.
std::string wire_field(const std::string& field) {
  if (field == "alpha") return "alpha_deg";
  if (field == "min_height") return "hmin";
  if (field == "max_height") return "hmax";
  return field;
}

Response ok(const Json& j) { return {200, j.dump()}; }

Response fail(int status, std::string_view code, std::string_view message, std::string_view field = {}) {
  return {status, error_body(code, message, field)};
}

Response fail(const DomainError& e) {
  const int status = e.code() == ErrorCode::grid_too_large ? 422 : 400;
  return fail(status, to_string(e.code()), e.what(), wire_field(e.field()));
}

template <class F>
Response guarded(F&& handler) {
  try {
    return handler();
  } catch (const DomainError& e) {
    return fail(e);
  } catch (const Json::exception& e) {
    return fail(400, to_string(ErrorCode::invalid_request), e.what());
  }
}

Json parse_body(std::string_view body) {
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw DomainError(ErrorCode::invalid_request, "", fmt::format("request body is not valid JSON: {}", e.what()));
  }
}

double query_number(const Query& query, const char* key, std::optional<double> fallback) {
  const auto it = query.find(key);
  if (it == query.end()) {
    if (fallback) return *fallback;
    throw DomainError(ErrorCode::invalid_request, key, fmt::format("missing query parameter '{}'", key));
  }
  const std::string& text = it->second;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError(ErrorCode::invalid_request, key, fmt::format("query parameter '{}' is not a number", key));
  }
  return value;
}

std::size_t query_count(const Query& query, const char* key, std::size_t fallback) {
  const double v = query_number(query, key, static_cast<double>(fallback));
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
    throw DomainError(ErrorCode::invalid_range, key, fmt::format("'{}' must be a non-negative integer", key));
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string error_body(std::string_view code, std::string_view message, std::string_view field) {
  Json j;
  j["code"] = std::string(code);
  j["message"] = std::string(message);
  if (!field.empty()) j["field"] = std::string(field);
  return j.dump();
}

Response Api::optimize(std::string_view body) const {
  return guarded([&] {
    const ScenarioSpec spec = io::scenario_from_json(parse_body(body));
    return ok(io::to_json(hiproof::optimize(spec, config_.limits)));
  });
}

Response Api::score(std::string_view body) const {
  return guarded([&] {
    const Json j = parse_body(body);
    const HouseParams house = io::house_from_json(j, {"against"});
    Scenario against = Scenario::fixed_volume;
    if (const auto it = j.find("against"); it != j.end()) {
      const auto s = it->is_string() ? scenario_from_string(it->get<std::string>()) : std::nullopt;
      if (!s || *s == Scenario::height_range) {
        throw DomainError(ErrorCode::unknown_scenario, "against",
                          "'against' must be fixed-volume, fixed-r, fixed-k or fixed-floor");
      }
      against = *s;
    }
    check_limits(house, config_.limits);
    const OptimalDesign ref = casestudy::reference_optimum(house, against);
    return ok(io::to_json(compactness(house, ref.surface)));
  });
}

Response Api::contour(const Query& query) const {
  return guarded([&] {
    const double volume = query_number(query, "volume", std::nullopt);
    const double alpha = deg_to_rad(query_number(query, "alpha_deg", std::nullopt));
    const oracle::GridSpec defaults;
    oracle::GridSpec grid;
    grid.n_r = query_count(query, "nr", defaults.n_r);
    grid.n_k = query_count(query, "nk", defaults.n_k);
    grid.r = {query_number(query, "rlo", defaults.r.lo), query_number(query, "rhi", defaults.r.hi)};
    grid.k = {query_number(query, "klo", defaults.k.lo), query_number(query, "khi", defaults.k.hi)};
    oracle::validate(grid);
    if (grid.n_r > config_.max_grid_axis || grid.n_k > config_.max_grid_axis) {
      throw DomainError(ErrorCode::grid_too_large, grid.n_r > config_.max_grid_axis ? "nr" : "nk",
                        fmt::format("grid {}x{} exceeds the {}x{} cap", grid.n_r, grid.n_k, config_.max_grid_axis,
                                    config_.max_grid_axis));
    }
    validate(FixedVolume{volume, alpha}, config_.limits);
    return ok(io::to_json(oracle::contour_grid(volume, alpha, grid)));
  });
}

Response Api::healthz() const { return {200, "ok", "text/plain"}; }

// ---------------------------------------------------------------------------

struct Server::Impl {
  Api api;
  httplib::Server http;

  explicit Impl(ServiceConfig config) : api(std::move(config)) {
    const ServiceConfig& cfg = api.config();
    http.set_payload_max_length(cfg.max_body_bytes);

    auto reply = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };

    http.Post("/api/v1/optimize", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api.optimize(req.body));
    });
    http.Post("/api/v1/score", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, api.score(req.body));
    });
    http.Get("/api/v1/contour", [this, reply](const httplib::Request& req, httplib::Response& res) {
      Query query;
      for (const auto& [key, value] : req.params) query.emplace(key, value);
      reply(res, api.contour(query));
    });
    http.Get("/healthz", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, api.healthz()); });
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      if (res.status == 413) {
        res.set_content(error_body(to_string(ErrorCode::payload_too_large), "request body too large"),
                        "application/json");
      } else if (res.status == 404) {
        res.set_content(error_body("not_found", "no such endpoint"), "application/json");
      }
    });
    http.set_post_routing_handler([origin = cfg.cors_origin](const httplib::Request&, httplib::Response& res) {
      if (origin.empty()) return;
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
  }
};

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }
void Server::stop() { impl_->http.stop(); }
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace hiproof::service
