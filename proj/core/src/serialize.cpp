#include "touchscope/serialize.hpp"

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {
namespace {

Error bad_request(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

double number_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw bad_request(fmt::format("missing numeric field '{}'", key));
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string_view action_name(Action a) noexcept {
  switch (a) {
    case Action::Down: return "down";
    case Action::Move: return "move";
    case Action::Up: return "up";
  }
  return "down";
}

std::string_view ring_name(Ring r) noexcept {
  switch (r) {
    case Ring::Touch: return "touch";
    case Ring::Move: return "move";
    case Ring::Lift: return "lift";
  }
  return "touch";
}

std::string_view query_mode_name(QueryMode m) noexcept {
  return m == QueryMode::StartIn ? "start_in" : "any_in";
}

Json to_json(Point p) { return Json::array({p.x, p.y}); }

Json to_json(const DeviceProfile& d) {
  return {{"width_px", d.width_px},
          {"height_px", d.height_px},
          {"width_mm", d.width_mm},
          {"height_mm", d.height_mm},
          {"orientation", d.orientation == Orientation::Portrait ? "portrait" : "landscape"}};
}

Json session_summary(const Session& s) {
  std::size_t forced = 0;
  for (const auto& g : s.gestures) forced += g.force_closed ? 1 : 0;
  Json rejected = Json::array();
  for (const auto& r : s.report.rejected) rejected.push_back({{"line", r.line}, {"reason", r.reason}});
  return {{"session_id", s.session_id},
          {"device", to_json(s.device)},
          {"events", s.events.size()},
          {"gestures", s.gestures.size()},
          {"force_closed", forced},
          {"orphans", s.report.orphan_events.size()},
          {"rejected", rejected},
          {"duration_ms", s.events.empty() ? 0.0 : s.end_t() - s.start_t()},
          {"metadata", s.metadata}};
}

Json to_json(const Gesture& g) {
  Json pts = Json::array();
  for (const auto& p : g.points) pts.push_back({p.x, p.y, p.t});
  return {{"gesture_id", g.gesture_id},
          {"pointer_id", g.pointer_id},
          {"start_t", g.start_t},
          {"end_t", g.end_t},
          {"force_closed", g.force_closed},
          {"points", pts}};
}

Json to_json(const std::vector<SemanticDot>& dots) {
  Json out = Json::array();
  for (const auto& d : dots) {
    out.push_back({{"event", d.event_index},
                   {"region_id", d.region_id},
                   {"ring_index", d.ring_index},
                   {"angle", d.angle},
                   {"pos", to_json(d.pos)}});
  }
  return out;
}

Json to_json(const RadialLayout& layout) {
  const auto& c = layout.config;
  Json dots = Json::array();
  for (const auto& d : layout.dots) {
    dots.push_back({{"event", d.event_index},
                    {"gesture_id", d.gesture_id},
                    {"ring", ring_name(d.ring)},
                    {"angle", d.angle},
                    {"pos", to_json(d.pos)}});
  }
  Json arcs = Json::array();
  for (const auto& a : layout.arcs) {
    arcs.push_back({{"gesture_id", a.gesture_id},
                    {"start_angle", a.start_angle},
                    {"end_angle", a.end_angle},
                    {"height", a.height},
                    {"path", Json::array({to_json(a.start), to_json(a.control1),
                                          to_json(a.control2), to_json(a.end)})}});
  }
  return {{"period", {layout.start_t, layout.end_t}},
          {"ring_radii", {{"touch", c.rings.touch}, {"move", c.rings.move}, {"lift", c.rings.lift}}},
          {"semantic_base", c.semantic_base},
          {"semantic_step", c.semantic_step},
          {"max_arc_height", c.max_arc_height},
          {"dots", dots},
          {"arcs", arcs},
          {"regions", to_json(layout.regions)},
          {"semantic_dots", to_json(layout.semantic_dots)}};
}

Json to_json(const QueryResult& r) {
  return {{"gesture_ids", r.gesture_ids}, {"events", r.event_indices}};
}

Json to_json(const HeatmapGrid& g) {
  return {{"cols", g.cols},
          {"rows", g.rows},
          {"counts", g.counts},
          {"max_count", g.max_count},
          {"total", g.total}};
}

Json to_json(const ClusterResult& r) {
  Json centroids = Json::array();
  for (const auto& c : r.centroids) {
    Json pts = Json::array();
    for (const auto& p : c.pts) pts.push_back(to_json(p));
    centroids.push_back(pts);
  }
  return {{"k", r.k},
          {"seed", r.seed},
          {"iterations", r.iterations},
          {"inertia", r.inertia},
          {"inertia_history", r.inertia_history},
          {"gesture_ids", r.gesture_ids},
          {"assignment", r.assignment},
          {"sizes", r.cluster_sizes()},
          {"centroids", centroids}};
}

Json to_json(const ConfidenceRegion& r) {
  return {{"selection_center", to_json(r.selection_center)},
          {"selection_radius", r.selection_radius},
          {"confidence", r.confidence},
          {"sampling_count", r.sampling_count},
          {"original_center", to_json(r.original_center)},
          {"original_count", r.original_count},
          {"new_center", to_json(r.new_center)},
          {"new_radius", r.new_radius},
          {"new_count", r.new_count}};
}

Json to_json(const UiMetrics& m) {
  return {{"edge", m.edge == HorizontalEdge::Left ? "left" : "right"},
          {"distance_to_edge_mm", m.distance_to_edge_mm},
          {"distance_to_bottom_mm", m.distance_to_bottom_mm},
          {"diameter_mm", m.diameter_mm}};
}

Json to_json(const SemanticRegion& r) {
  return {{"region_id", r.region_id},
          {"label", r.label},
          {"ring_index", r.ring_index},
          {"cx", r.shape.center.x},
          {"cy", r.shape.center.y},
          {"r", r.shape.radius}};
}

Json to_json(const std::vector<SemanticRegion>& regions) {
  Json out = Json::array();
  for (const auto& r : regions) out.push_back(to_json(r));
  return out;
}

QueryArea query_area_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw bad_request("area needs a 'type' of circle or rect");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "circle") {
    Circle c{{number_field(j, "cx"), number_field(j, "cy")}, number_field(j, "r")};
    if (c.radius < 0.0) throw bad_request("circle radius must be non-negative");
    return c;
  }
  if (type == "rect") {
    Rect r{number_field(j, "x0"), number_field(j, "y0"), number_field(j, "x1"),
           number_field(j, "y1")};
    if (r.x1 < r.x0 || r.y1 < r.y0) throw bad_request("rect corners out of order");
    return r;
  }
  throw bad_request(fmt::format("unknown area type '{}'", type));
}

QueryMode query_mode_from_json(const Json& j) {
  if (j.is_null()) return QueryMode::StartIn;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "start_in") return QueryMode::StartIn;
    if (s == "any_in") return QueryMode::AnyIn;
  }
  throw bad_request("mode must be 'start_in' or 'any_in'");
}

std::vector<SemanticRegion> regions_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("regions") ? j.at("regions") : j;
  if (!list.is_array()) throw bad_request("regions must be an array");
  std::vector<SemanticRegion> out;
  for (const auto& item : list) {
    SemanticRegion r;
    r.region_id = static_cast<int>(out.size());
    if (!item.is_object() || !item.contains("label") || !item.at("label").is_string()) {
      throw bad_request("region needs a string 'label'");
    }
    r.label = item.at("label").get<std::string>();
    r.ring_index = item.contains("ring_index") ? static_cast<int>(number_field(item, "ring_index"))
                                               : static_cast<int>(out.size());
    r.shape = {{number_field(item, "cx"), number_field(item, "cy")}, number_field(item, "r")};
    out.push_back(std::move(r));
  }
  return out;
}

std::set<Action> action_filter_from_string(std::string_view csv) {
  std::set<Action> out;
  if (csv.empty() || csv == "all") return {Action::Down, Action::Move, Action::Up};
  std::size_t start = 0;
  while (true) {
    const auto comma = csv.find(',', start);
    const auto tok = csv.substr(start, comma - start);
    if (tok == "touch" || tok == "down") {
      out.insert(Action::Down);
    } else if (tok == "move") {
      out.insert(Action::Move);
    } else if (tok == "lift" || tok == "up") {
      out.insert(Action::Up);
    } else {
      throw bad_request(fmt::format("unknown event filter '{}'", tok));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace touchscope
