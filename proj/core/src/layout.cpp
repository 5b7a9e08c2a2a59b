#include "touchscope/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {

Ring ring_for(Action action) noexcept {
  switch (action) {
    case Action::Down: return Ring::Touch;
    case Action::Move: return Ring::Move;
    case Action::Up: return Ring::Lift;
  }
  return Ring::Touch;
}

void RadialLayoutConfig::validate() const {
  const auto& r = rings;
  if (!(r.touch > 0.0 && r.touch < r.move && r.move < r.lift && r.lift < semantic_base)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("ring radii must satisfy 0 < touch < move < lift < semantic base "
                            "(got {}, {}, {}, {})",
                            r.touch, r.move, r.lift, semantic_base));
  }
  if (!(semantic_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "semantic ring step must be positive");
  }
  if (!(max_arc_height >= 0.0 && max_arc_height < r.touch)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("max_arc_height must lie in [0, {})", r.touch));
  }
}

double time_angle(double t, double start_t, double end_t) noexcept {
  return 2.0 * std::numbers::pi * (t - start_t) / (end_t - start_t);
}

Point polar(double radius, double angle) noexcept {
  return {radius * std::sin(angle), -radius * std::cos(angle)};
}

std::vector<SemanticDot> assign_semantic_axes(const Session& session,
                                              const std::vector<SemanticRegion>& regions,
                                              const RadialLayoutConfig& config) {
  validate_regions(regions, session.device);
  std::vector<SemanticDot> out;
  if (regions.empty() || session.events.empty()) return out;
  const double t0 = session.start_t();
  const double t1 = session.end_t();
  for (std::size_t i = 0; i < session.events.size(); ++i) {
    const auto& e = session.events[i];
    const bool eligible =
        e.action == Action::Down || (config.semantic_include_moves && e.action == Action::Move);
    if (!eligible) continue;
    const SemanticRegion* r = region_at(regions, e.position());
    if (!r) continue;
    const double a = t1 > t0 ? time_angle(e.t, t0, t1) : 0.0;
    out.push_back({i, r->region_id, r->ring_index, a, polar(config.semantic_radius(r->ring_index), a)});
  }
  return out;
}

RadialLayout build_radial_layout(const Session& session, const RadialLayoutConfig& config,
                                 const std::vector<SemanticRegion>& regions) {
  config.validate();
  if (session.events.empty()) {
    throw Error(ErrorCode::DegeneratePeriod, "session has no events");
  }
  RadialLayout layout;
  layout.config = config;
  layout.start_t = session.start_t();
  layout.end_t = session.end_t();
  if (!(layout.end_t > layout.start_t)) {
    throw Error(ErrorCode::DegeneratePeriod,
                fmt::format("session spans zero time (t = {} ms)", layout.start_t));
  }

  std::vector<int> owner(session.events.size(), -1);
  for (const auto& g : session.gestures) {
    for (const auto& p : g.points) owner[p.event_index] = g.gesture_id;
  }

  auto radius_of = [&](Ring ring) {
    switch (ring) {
      case Ring::Touch: return config.rings.touch;
      case Ring::Move: return config.rings.move;
      case Ring::Lift: return config.rings.lift;
    }
    return config.rings.touch;
  };

  layout.dots.reserve(session.events.size());
  for (std::size_t i = 0; i < session.events.size(); ++i) {
    const auto& e = session.events[i];
    const Ring ring = ring_for(e.action);
    const double a = time_angle(e.t, layout.start_t, layout.end_t);
    layout.dots.push_back({i, owner[i], ring, a, polar(radius_of(ring), a)});
  }

  double longest = 0.0;
  for (const auto& g : session.gestures) longest = std::max(longest, g.duration());

  layout.arcs.reserve(session.gestures.size());
  for (const auto& g : session.gestures) {
    LayoutArc arc;
    arc.gesture_id = g.gesture_id;
    arc.start_angle = time_angle(g.start_t, layout.start_t, layout.end_t);
    arc.end_angle = time_angle(g.end_t, layout.start_t, layout.end_t);
    arc.height = longest > 0.0 ? config.max_arc_height * (g.duration() / longest) : 0.0;
    const auto& last = session.events[g.points.back().event_index];
    // force-closed gestures end on whatever ring their last event sits on
    arc.start = polar(config.rings.touch, arc.start_angle);
    arc.end = polar(radius_of(ring_for(last.action)), arc.end_angle);
    const double control_radius = config.rings.touch - arc.height;
    arc.control1 = polar(control_radius, arc.start_angle);
    arc.control2 = polar(control_radius, arc.end_angle);
    layout.arcs.push_back(arc);
  }

  if (!regions.empty()) {
    layout.regions = regions;
    layout.semantic_dots = assign_semantic_axes(session, regions, config);
  }
  return layout;
}

bool area_contains(const QueryArea& area, Point p) noexcept {
  return std::visit([&](const auto& shape) { return shape.contains(p); }, area);
}

QueryResult spatial_query(const Session& session, const QueryArea& area, QueryMode mode) {
  QueryResult out;
  for (const auto& g : session.gestures) {
    bool hit = false;
    if (mode == QueryMode::StartIn) {
      hit = area_contains(area, g.points.front().position());
    } else {
      hit = std::any_of(g.points.begin(), g.points.end(),
                        [&](const GesturePoint& p) { return area_contains(area, p.position()); });
    }
    if (!hit) continue;
    out.gesture_ids.push_back(g.gesture_id);
    for (const auto& p : g.points) out.event_indices.push_back(p.event_index);
  }
  std::sort(out.event_indices.begin(), out.event_indices.end());
  return out;
}

std::size_t heatmap_cell(double coord, double extent, std::size_t cells) noexcept {
  const double scaled = std::ceil(coord * static_cast<double>(cells) / extent) - 1.0;
  if (!(scaled > 0.0)) return 0;
  const auto last = static_cast<double>(cells - 1);
  return static_cast<std::size_t>(std::min(scaled, last));
}

HeatmapGrid heatmap(const Session& session, std::size_t cols, std::size_t rows,
                    const std::set<Action>& filter) {
  if (cols == 0 || rows == 0) {
    throw Error(ErrorCode::InvalidArgument, "heat map needs at least one column and row");
  }
  HeatmapGrid grid;
  grid.cols = cols;
  grid.rows = rows;
  grid.counts.assign(cols * rows, 0);
  for (const auto& e : session.events) {
    if (!filter.count(e.action)) continue;
    const std::size_t c = heatmap_cell(e.x, session.device.width_px, cols);
    const std::size_t r = heatmap_cell(e.y, session.device.height_px, rows);
    ++grid.counts[r * cols + c];
    ++grid.total;
  }
  grid.max_count = grid.counts.empty() ? 0 : *std::max_element(grid.counts.begin(), grid.counts.end());
  return grid;
}

}  // namespace touchscope
