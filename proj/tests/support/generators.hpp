#pragma once

#include <cstddef>
#include <vector>

#include "touchscope/geometry.hpp"
#include "touchscope/metrics.hpp"
#include "touchscope/synth.hpp"

namespace gen {

using touchscope::Point;
using touchscope::synth::Rng;

/// Random walk polyline with 1..max_vertices vertices; occasionally repeats a
/// vertex to exercise zero-length segments.
inline std::vector<Point> polyline(Rng& rng, std::size_t max_vertices = 40) {
  const auto n = 1 + static_cast<std::size_t>(rng.bits() % max_vertices);
  std::vector<Point> pts{{rng.uniform(0.0, 1920.0), rng.uniform(0.0, 1080.0)}};
  while (pts.size() < n) {
    if (rng.uniform() < 0.05) {
      pts.push_back(pts.back());
      continue;
    }
    const double scale = rng.uniform() < 0.5 ? 5.0 : 120.0;
    pts.push_back({pts.back().x + rng.normal(0.0, scale), pts.back().y + rng.normal(0.0, scale)});
  }
  return pts;
}

/// Polyline with at least two distinct vertices.
inline std::vector<Point> moving_polyline(Rng& rng, std::size_t max_vertices = 40) {
  while (true) {
    auto pts = polyline(rng, max_vertices);
    if (pts.size() >= 2 && touchscope::path_length(pts) > 1e-3) return pts;
  }
}

inline touchscope::GestureVector vector(Rng& rng, std::size_t n, int id = 0) {
  touchscope::GestureVector v;
  v.gesture_id = id;
  for (std::size_t i = 0; i < n; ++i) v.pts.push_back({rng.uniform(-500.0, 2000.0), rng.uniform(-500.0, 1500.0)});
  v.source_length = touchscope::path_length(v.pts);
  return v;
}

inline std::vector<Point> gaussian_blob(Rng& rng, Point center, double sigma, std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({rng.normal(center.x, sigma), rng.normal(center.y, sigma)});
  return out;
}

}  // namespace gen
