#include "touchscope/api.hpp"

#include <charconv>
#include <cstdlib>

#include <fmt/format.h>

#include "touchscope/clustering.hpp"
#include "touchscope/error.hpp"
#include "touchscope/report.hpp"
#include "touchscope/serialize.hpp"

namespace touchscope {
namespace {

ApiResponse json_response(int status, const Json& body) { return {status, "application/json", body.dump()}; }

ApiResponse error_response(const Error& e) {
  int status = 400;
  switch (e.code()) {
    case ErrorCode::SessionNotFound: status = 404; break;
    case ErrorCode::SessionBusy: status = 409; break;
    case ErrorCode::StoreIo: status = 500; break;
    default: break;
  }
  return json_response(status, {{"error", e.name()}, {"message", e.what()}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < path.size()) {
    if (path[start] == '/') {
      ++start;
      continue;
    }
    const auto slash = path.find('/', start);
    out.push_back(path.substr(start, slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return out;
}

double query_double(const std::map<std::string, std::string>& q, const std::string& key, double fallback) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("query parameter '{}' is not a number", key));
  }
  return v;
}

std::size_t query_count(const std::map<std::string, std::string>& q, const std::string& key,
                        std::size_t fallback) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("query parameter '{}' is not a count", key));
  }
  return v;
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("request body is not JSON: {}", e.what()));
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("field '{}' has the wrong type", key));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out += ' ';
    } else if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_query_string(std::string_view qs) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= qs.size()) {
    const auto amp = qs.find('&', start);
    const auto part = qs.substr(start, amp == std::string_view::npos ? std::string_view::npos : amp - start);
    if (!part.empty()) {
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) {
        out[percent_decode(part)] = "";
      } else {
        out[percent_decode(part.substr(0, eq))] = percent_decode(part.substr(eq + 1));
      }
    }
    if (amp == std::string_view::npos) break;
    start = amp + 1;
  }
  return out;
}

ServiceConfig config_from_env(ServiceConfig base) {
  if (const char* v = std::getenv("TOUCHSCOPE_STORE"); v && *v) base.store_root = v;
  if (const char* v = std::getenv("TOUCHSCOPE_BIND"); v && *v) {
    std::string_view bind(v);
    const auto colon = bind.rfind(':');
    if (colon == std::string_view::npos) {
      base.bind_host = std::string(bind);
    } else {
      base.bind_host = std::string(bind.substr(0, colon));
      base.port = std::atoi(std::string(bind.substr(colon + 1)).c_str());
    }
  }
  if (const char* v = std::getenv("TOUCHSCOPE_N_SAMPLES"); v && *v) {
    base.default_n_samples = static_cast<std::size_t>(std::strtoul(v, nullptr, 10));
  }
  if (const char* v = std::getenv("TOUCHSCOPE_RINGS"); v && *v) {
    double r[3] = {base.default_rings.touch, base.default_rings.move, base.default_rings.lift};
    if (std::sscanf(v, "%lf,%lf,%lf", &r[0], &r[1], &r[2]) == 3) base.default_rings = {r[0], r[1], r[2]};
  }
  return base;
}

Api::Api(SessionStore& store, ServiceConfig config) : store_(store), config_(std::move(config)) {}

ApiResponse Api::handle(const ApiRequest& request) {
  try {
    const auto parts = split_path(request.path);
    const auto& m = request.method;
    if (parts.size() == 1 && parts[0] == "health" && m == "GET") {
      return json_response(200, {{"status", "ok"}});
    }
    if (parts.empty() || parts[0] != "sessions") {
      return json_response(404, {{"error", "NotFound"}, {"message", "unknown route"}});
    }
    if (parts.size() == 1) {
      if (m == "POST") return upload(request);
      if (m == "GET") return list_sessions();
    } else {
      const std::string id(parts[1]);
      if (parts.size() == 2 && m == "GET") return summary(id);
      if (parts.size() == 3) {
        const auto what = parts[2];
        if (what == "layout" && m == "GET") return layout(id, request);
        if (what == "query" && m == "POST") return query(id, request);
        if (what == "regions" && m == "GET") return get_regions(id);
        if (what == "regions" && m == "POST") return post_regions(id, request);
        if (what == "confidence" && m == "POST") return confidence(id, request);
        if (what == "cluster" && m == "POST") return cluster(id, request);
        if (what == "heatmap" && m == "GET") return heatmap(id, request);
      }
    }
    return json_response(404, {{"error", "NotFound"}, {"message", "unknown route"}});
  } catch (const Error& e) {
    return error_response(e);
  } catch (const Json::exception& e) {
    return json_response(400, {{"error", "InvalidArgument"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return json_response(500, {{"error", "Internal"}, {"message", e.what()}});
  }
}

ApiResponse Api::upload(const ApiRequest& request) {
  std::optional<std::string> id;
  if (auto it = request.query.find("id"); it != request.query.end() && !it->second.empty()) {
    id = it->second;
  }
  const auto snap = store_.put(id, request.body);
  Json body = session_summary(*snap->session);
  body["log_hash"] = snap->log_hash;
  return json_response(201, body);
}

ApiResponse Api::list_sessions() { return json_response(200, {{"sessions", store_.list()}}); }

ApiResponse Api::summary(const std::string& id) {
  const auto snap = store_.get(id);
  Json body = session_summary(*snap->session);
  body["log_hash"] = snap->log_hash;
  return json_response(200, body);
}

ApiResponse Api::layout(const std::string& id, const ApiRequest& request) {
  const auto snap = store_.get(id);
  RadialLayoutConfig cfg;
  cfg.rings.touch = query_double(request.query, "touch", config_.default_rings.touch);
  cfg.rings.move = query_double(request.query, "move", config_.default_rings.move);
  cfg.rings.lift = query_double(request.query, "lift", config_.default_rings.lift);
  cfg.max_arc_height = query_double(request.query, "max_arc_height", cfg.max_arc_height);
  cfg.semantic_include_moves = query_count(request.query, "semantic_moves", 0) != 0;

  const std::string key = fmt::format("layout|{}|{}|{}|{}|{}|{}", cfg.rings.touch, cfg.rings.move,
                                      cfg.rings.lift, cfg.max_arc_height,
                                      cfg.semantic_include_moves, snap->regions_hash);
  if (auto hit = store_.cached(*snap, key)) return {200, "application/json", *hit};
  const auto body = to_json(build_radial_layout(*snap->session, cfg, snap->regions)).dump();
  store_.store_cache(*snap, key, body);
  return {200, "application/json", body};
}

ApiResponse Api::query(const std::string& id, const ApiRequest& request) {
  const auto snap = store_.get(id);
  const Json j = parse_body(request.body);
  if (!j.contains("area")) throw Error(ErrorCode::InvalidArgument, "query needs an 'area'");
  const auto area = query_area_from_json(j.at("area"));
  const auto mode = query_mode_from_json(j.contains("mode") ? j.at("mode") : Json());
  Json body = to_json(spatial_query(*snap->session, area, mode));
  body["mode"] = query_mode_name(mode);
  return json_response(200, body);
}

ApiResponse Api::get_regions(const std::string& id) {
  const auto snap = store_.get(id);
  return json_response(200, {{"regions", to_json(snap->regions)}});
}

ApiResponse Api::post_regions(const std::string& id, const ApiRequest& request) {
  store_.get(id);
  auto regions = regions_from_json(parse_body(request.body));
  const auto snap = store_.set_regions(id, std::move(regions));
  return json_response(200, {{"regions", to_json(snap->regions)},
                             {"semantic_dots", to_json(assign_semantic_axes(*snap->session, snap->regions))}});
}

ApiResponse Api::confidence(const std::string& id, const ApiRequest& request) {
  const auto snap = store_.get(id);
  const Json j = parse_body(request.body);
  if (!j.contains("selection")) throw Error(ErrorCode::InvalidArgument, "request needs a 'selection'");
  const auto& sel = j.at("selection");
  if (!sel.is_object()) throw Error(ErrorCode::InvalidArgument, "selection must be an object");
  const auto area = query_area_from_json(Json{{"type", "circle"},
                                              {"cx", sel.value("cx", Json())},
                                              {"cy", sel.value("cy", Json())},
                                              {"r", sel.value("r", Json())}});
  const auto circle = std::get<Circle>(area);
  const double c = field_or<double>(j, "c", 0.95);

  std::vector<Point> dots;
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error(ErrorCode::InvalidArgument, "points must be [x, y] pairs");
      }
      dots.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  } else {
    const auto kind = field_or<std::string>(j, "dots", "touch");
    if (kind != "touch" && kind != "move") {
      throw Error(ErrorCode::InvalidArgument, "dots must be 'touch' or 'move'");
    }
    dots = collect_dots({*snap->session}, kind == "touch" ? DotKind::Touch : DotKind::Move);
  }

  const auto& device = snap->session->device;
  const auto edge_name = field_or<std::string>(j, "edge", "auto");
  HorizontalEdge edge = circle.center.x > device.width_px / 2.0 ? HorizontalEdge::Right : HorizontalEdge::Left;
  if (edge_name == "left") edge = HorizontalEdge::Left;
  else if (edge_name == "right") edge = HorizontalEdge::Right;
  else if (edge_name != "auto") throw Error(ErrorCode::InvalidArgument, "edge must be left, right or auto");

  const auto region = confidence_region(dots, circle.center, circle.radius, c);
  Json body = {{"region", to_json(region)}};
  try {
    body["metrics"] = to_json(region_metrics(region, device, edge));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OutOfBounds) throw;
    body["metrics"] = nullptr;
  }
  return json_response(200, body);
}

ApiResponse Api::cluster(const std::string& id, const ApiRequest& request) {
  const auto snap = store_.get(id);
  const Json j = parse_body(request.body);
  const auto k = field_or<std::size_t>(j, "k", 0);
  const auto n = field_or<std::size_t>(j, "n_samples", config_.default_n_samples);
  const double w = field_or<double>(j, "weight_euclid", 0.5);
  const auto seed = field_or<std::uint64_t>(j, "seed", 0);
  const double min_length = field_or<double>(j, "min_length_px", 0.0);
  const auto max_iter = field_or<std::size_t>(j, "max_iterations", 100);
  const bool center = field_or<bool>(j, "center_cosine", false);

  const std::string key = fmt::format("cluster|{}|{}|{}|{}|{}|{}|{}", k, n, w, seed, min_length,
                                      max_iter, center);
  if (auto hit = store_.cached(*snap, key)) return {200, "application/json", *hit};

  KMeansConfig cfg;
  cfg.max_iterations = max_iter;
  cfg.seed = seed;
  cfg.distance = DistanceConfig::for_device(snap->session->device, w, n);
  cfg.distance.center_for_cosine = center;
  cfg.distance.validate();
  const auto labeled = collect_gesture_vectors({*snap->session}, n, min_length);
  std::vector<GestureVector> vectors;
  for (const auto& l : labeled) vectors.push_back(l.vector);
  const auto result = kmeans(vectors, k, cfg);

  Json body = {{"params",
                {{"k", k},
                 {"n_samples", n},
                 {"weight_euclid", w},
                 {"seed", seed},
                 {"min_length_px", min_length},
                 {"max_iterations", max_iter},
                 {"center_cosine", center}}},
               {"result", to_json(result)}};
  const auto text = body.dump();
  store_.store_cache(*snap, key, text);
  return {200, "application/json", text};
}

ApiResponse Api::heatmap(const std::string& id, const ApiRequest& request) {
  const auto snap = store_.get(id);
  const auto cols = query_count(request.query, "cols", 16);
  const auto rows = query_count(request.query, "rows", 9);
  std::string filter = "all";
  if (auto it = request.query.find("filter"); it != request.query.end()) filter = it->second;
  const auto actions = action_filter_from_string(filter);
  return json_response(200, to_json(touchscope::heatmap(*snap->session, cols, rows, actions)));
}

}  // namespace touchscope
