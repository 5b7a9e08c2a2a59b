#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "touchscope/clustering.hpp"
#include "touchscope/ingest.hpp"
#include "touchscope/layout.hpp"

namespace touchscope {

/// Minimal append-only SVG document. Coordinates are written with two
/// decimals so output is byte-stable.
class SvgWriter {
 public:
  SvgWriter(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view style);
  void circle(double cx, double cy, double r, std::string_view style);
  void line(double x1, double y1, double x2, double y2, std::string_view style);
  void polyline(std::span<const Point> pts, std::string_view style);
  void cubic(Point start, Point c1, Point c2, Point end, std::string_view style);
  void text(double x, double y, std::string_view content, std::string_view style);
  void open_group(std::string_view attributes);
  void close_group();

  std::string finish() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

std::string escape_xml(std::string_view s);

struct RadialSvgOptions {
  double size = 800.0;  // square canvas edge, px
  bool draw_trajectories = true;
};

/// Rings, dots, gesture arcs and semantic rings around a scaled screen
/// underlay carrying the raw trajectories.
std::string render_radial_svg(const RadialLayout& layout, const Session& session,
                              const RadialSvgOptions& options = {});

struct RegionOverlay {
  std::string label;
  ConfidenceRegion region;
};

/// Screen-space overlay: dots, selection circles, original centers and fitted
/// regions.
std::string render_region_overlay_svg(const DeviceProfile& device, std::span<const Point> dots,
                                      std::span<const RegionOverlay> overlays,
                                      double scale = 0.5);

/// Per-cluster mean trajectories over the screen outline.
std::string render_cluster_svg(const DeviceProfile& device, const ClusterResult& result,
                               double scale = 0.5);

}  // namespace touchscope
