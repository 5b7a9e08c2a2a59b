#pragma once

#include <cmath>

namespace touchscope {

/// Screen-space point in pixels. Origin top-left of the landscape screen,
/// x to the right, y downward.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) noexcept {
  return std::hypot(b.x - a.x, b.y - a.y);
}

struct Circle {
  Point center;
  double radius = 0.0;

  bool contains(Point p) const noexcept { return distance(center, p) <= radius; }
};

/// Axis-aligned rectangle, bounds inclusive.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(Point p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

}  // namespace touchscope
