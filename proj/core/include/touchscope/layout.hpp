#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "touchscope/geometry.hpp"
#include "touchscope/ingest.hpp"
#include "touchscope/regions.hpp"

namespace touchscope {

enum class Ring { Touch, Move, Lift };

Ring ring_for(Action action) noexcept;

// Layout coordinates are normalized: center (0,0), outer radius 1, y downward
// so angle 0 sits at 12 o'clock and angles grow clockwise.
struct RingRadii {
  double touch = 0.30;
  double move = 0.42;
  double lift = 0.54;
};

struct RadialLayoutConfig {
  RingRadii rings;
  double semantic_base = 0.62;
  double semantic_step = 0.07;
  double max_arc_height = 0.20;  // inward bulge of the longest gesture's arc
  bool semantic_include_moves = false;

  void validate() const;
  double semantic_radius(int ring_index) const noexcept {
    return semantic_base + semantic_step * ring_index;
  }
};

struct LayoutDot {
  std::size_t event_index = 0;
  int gesture_id = -1;  // -1 for orphan events
  Ring ring = Ring::Touch;
  double angle = 0.0;
  Point pos;
};

/// Cubic Bezier from a gesture's Down dot to its Up dot.
struct LayoutArc {
  int gesture_id = 0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  double height = 0.0;
  Point start;
  Point control1;
  Point control2;
  Point end;
};

struct SemanticDot {
  std::size_t event_index = 0;
  int region_id = 0;
  int ring_index = 0;
  double angle = 0.0;
  Point pos;
};

struct RadialLayout {
  double start_t = 0.0;
  double end_t = 0.0;
  RadialLayoutConfig config;
  std::vector<LayoutDot> dots;
  std::vector<LayoutArc> arcs;
  std::vector<SemanticRegion> regions;
  std::vector<SemanticDot> semantic_dots;
};

/// Clockwise angle from 12 o'clock for time t within [start_t, end_t].
double time_angle(double t, double start_t, double end_t) noexcept;
Point polar(double radius, double angle) noexcept;

/// One dot per event on its action ring, one arc per gesture. Arc height is
/// max_arc_height scaled by duration over the longest duration in the session.
/// Throws DegeneratePeriod when the session spans zero time.
RadialLayout build_radial_layout(const Session& session, const RadialLayoutConfig& config = {},
                                 const std::vector<SemanticRegion>& regions = {});

/// Semantic dots for Down events (optionally Moves too) inside a region.
/// Validates the regions first.
std::vector<SemanticDot> assign_semantic_axes(const Session& session,
                                              const std::vector<SemanticRegion>& regions,
                                              const RadialLayoutConfig& config = {});

using QueryArea = std::variant<Circle, Rect>;

enum class QueryMode { StartIn, AnyIn };

struct QueryResult {
  std::vector<int> gesture_ids;
  std::vector<std::size_t> event_indices;  // every event of the matched gestures
};

bool area_contains(const QueryArea& area, Point p) noexcept;

QueryResult spatial_query(const Session& session, const QueryArea& area, QueryMode mode);

struct HeatmapGrid {
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<std::size_t> counts;  // row-major
  std::size_t max_count = 0;
  std::size_t total = 0;

  std::size_t at(std::size_t col, std::size_t row) const { return counts.at(row * cols + col); }
};

/// Uniform screen binning. Cell i spans (i*w/cols, (i+1)*w/cols]; a coordinate
/// on a shared boundary lands in the lower-index cell, and coordinates beyond
/// the screen clamp to the border cells.
HeatmapGrid heatmap(const Session& session, std::size_t cols, std::size_t rows,
                    const std::set<Action>& filter = {Action::Down, Action::Move, Action::Up});

std::size_t heatmap_cell(double coord, double extent, std::size_t cells) noexcept;

}  // namespace touchscope
