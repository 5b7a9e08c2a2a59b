#pragma once

// Brute-force reference implementations. They deliberately avoid the library
// code paths they check (no binary search, no stable_sort, no hypot).

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "touchscope/geometry.hpp"

namespace oracle {

using touchscope::Point;

inline double seg_len(Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double path_length(const std::vector<Point>& pts) {
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += seg_len(pts[i], pts[i + 1]);
  return static_cast<double>(total);
}

/// Walks the polyline segment by segment, emitting a sample every
/// `total/(n-1)` of arc length.
inline std::vector<Point> arc_walk(const std::vector<Point>& pts, std::size_t n) {
  const double total = path_length(pts);
  std::vector<Point> out{pts.front()};
  if (total == 0.0) return std::vector<Point>(n, pts.front());
  const double step = total / static_cast<double>(n - 1);
  std::size_t seg = 0;
  double seg_start = 0.0;  // arc length at pts[seg]
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = step * static_cast<double>(i);
    while (seg + 1 < pts.size() - 1 && seg_start + seg_len(pts[seg], pts[seg + 1]) <= target) {
      seg_start += seg_len(pts[seg], pts[seg + 1]);
      ++seg;
    }
    const double len = seg_len(pts[seg], pts[seg + 1]);
    const double f = len > 0.0 ? std::min(1.0, (target - seg_start) / len) : 0.0;
    out.push_back({pts[seg].x + f * (pts[seg + 1].x - pts[seg].x),
                   pts[seg].y + f * (pts[seg + 1].y - pts[seg].y)});
  }
  out.push_back(pts.back());
  return out;
}

struct Projection {
  double arc = 0.0;       // arc-length parameter of the closest point
  double distance = 0.0;  // distance to the polyline
  std::size_t segment = 0;
};

/// Closest point on segments [from_segment, end), preferring the earliest
/// segment within `tol` so self-crossing paths resolve forward.
inline Projection project(const std::vector<Point>& pts, Point p, std::size_t from_segment, double tol) {
  Projection best{0.0, std::numeric_limits<double>::infinity(), from_segment};
  double arc_at = 0.0;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const Point a = pts[s];
    const Point b = pts[s + 1];
    const double len = seg_len(a, b);
    if (s >= from_segment) {
      double f = 0.0;
      if (len > 0.0) {
        f = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
        f = std::fmin(1.0, std::fmax(0.0, f));
      }
      const Point q{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
      const double d = seg_len(p, q);
      if (d <= tol) return {arc_at + f * len, d, s};
      if (d < best.distance) best = {arc_at + f * len, d, s};
    }
    arc_at += len;
  }
  return best;
}

inline Point centroid(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
  long double x = 0.0L;
  long double y = 0.0L;
  for (std::size_t i : idx) {
    x += pts[i].x;
    y += pts[i].y;
  }
  return {static_cast<double>(x / idx.size()), static_cast<double>(y / idx.size())};
}

/// The `keep` members of `candidates` closest to `center` by repeated
/// minimum extraction; ties go to the earlier candidate.
inline std::vector<std::size_t> closest(const std::vector<Point>& pts, std::vector<std::size_t> candidates,
                                        Point center, std::size_t keep) {
  std::vector<std::size_t> out;
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t r = 0; r < keep; ++r) {
    std::size_t pick = candidates.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const double d = seg_len(pts[candidates[c]], center);
      if (d < best) {
        best = d;
        pick = c;
      }
    }
    used[pick] = true;
    out.push_back(candidates[pick]);
  }
  return out;
}

struct TrimResult {
  std::size_t selected = 0;
  std::size_t kept = 0;
  Point center;
  double radius = 0.0;
};

/// Select within the circle, trim to floor(c*n) nearest the centroid,
/// recenter, re-rank the whole selection and take the farthest kept dot.
inline TrimResult trim_recenter_rerank(const std::vector<Point>& pts, Point sel_center, double sel_radius,
                                       double c) {
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (seg_len(pts[i], sel_center) <= sel_radius) sel.push_back(i);
  }
  TrimResult r;
  r.selected = sel.size();
  // integer arithmetic on c expressed in thousandths avoids float floor issues
  const auto permille = static_cast<std::size_t>(std::llround(c * 1000.0));
  r.kept = permille * sel.size() / 1000;
  const Point p0 = centroid(pts, sel);
  const auto first = closest(pts, sel, p0, r.kept);
  r.center = centroid(pts, first);
  const auto second = closest(pts, sel, r.center, r.kept);
  for (std::size_t i : second) r.radius = std::fmax(r.radius, seg_len(pts[i], r.center));
  return r;
}

/// Cell index whose half-open interval (lo, hi] holds v; cell 0 also owns
/// everything at or below its upper bound, the last cell everything above.
inline std::size_t bin(double v, double extent, std::size_t cells) {
  for (std::size_t i = 0; i < cells; ++i) {
    const double hi = extent * static_cast<double>(i + 1) / static_cast<double>(cells);
    if (v <= hi) return i;
  }
  return cells - 1;
}

}  // namespace oracle
