#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "touchscope/layout.hpp"
#include "touchscope/store.hpp"

namespace touchscope {

struct ServiceConfig {
  std::string store_root = "touchscope-store";
  std::string bind_host = "127.0.0.1";
  int port = 8080;
  std::size_t default_n_samples = 32;
  RingRadii default_rings;
};

/// Reads TOUCHSCOPE_STORE, TOUCHSCOPE_BIND (host:port), TOUCHSCOPE_N_SAMPLES
/// and TOUCHSCOPE_RINGS (touch,move,lift) over the given defaults.
ServiceConfig config_from_env(ServiceConfig base = {});

struct ApiRequest {
  std::string method;  // GET, POST
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Transport-independent request router. Every endpoint is a thin wrapper
/// over a library call; errors come back as {"error": <code name>,
/// "message": ...} with 400, 404 (SessionNotFound), 409 (SessionBusy) or
/// 500 (StoreIo).
///
///   POST /sessions[?id=]               upload a log, 201
///   GET  /sessions                     list ids
///   GET  /sessions/{id}                session summary
///   GET  /sessions/{id}/layout         ?touch=&move=&lift=&max_arc_height=&semantic_moves=
///   POST /sessions/{id}/query          {"area": {...}, "mode": "start_in"|"any_in"}
///   GET  /sessions/{id}/regions
///   POST /sessions/{id}/regions        {"regions": [{label, ring_index, cx, cy, r}]}
///   POST /sessions/{id}/confidence     {"selection": {cx, cy, r}, "c": 0.95, "dots": "touch"}
///   POST /sessions/{id}/cluster        {"k", "n_samples", "weight_euclid", "seed", ...}
///   GET  /sessions/{id}/heatmap        ?cols=&rows=&filter=touch,move,lift
class Api {
 public:
  Api(SessionStore& store, ServiceConfig config);

  ApiResponse handle(const ApiRequest& request);

  const ServiceConfig& config() const noexcept { return config_; }

 private:
  ApiResponse upload(const ApiRequest& request);
  ApiResponse list_sessions();
  ApiResponse summary(const std::string& id);
  ApiResponse layout(const std::string& id, const ApiRequest& request);
  ApiResponse query(const std::string& id, const ApiRequest& request);
  ApiResponse get_regions(const std::string& id);
  ApiResponse post_regions(const std::string& id, const ApiRequest& request);
  ApiResponse confidence(const std::string& id, const ApiRequest& request);
  ApiResponse cluster(const std::string& id, const ApiRequest& request);
  ApiResponse heatmap(const std::string& id, const ApiRequest& request);

  SessionStore& store_;
  ServiceConfig config_;
};

/// Parses "a=1&b=two" with percent-decoding.
std::map<std::string, std::string> parse_query_string(std::string_view qs);

}  // namespace touchscope
