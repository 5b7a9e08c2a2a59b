#include "touchscope/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace touchscope {
namespace {

constexpr std::array<std::string_view, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  // avoid "-0.00"
  if (std::abs(v) < 0.005) v = 0.0;
  return fmt::format("{:.2f}", v);
}

}  // namespace

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

SvgWriter::SvgWriter(double width, double height) : width_(width), height_(height) {}

void SvgWriter::rect(double x, double y, double w, double h, std::string_view style) {
  body_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {}/>\n", num(x), num(y),
                       num(w), num(h), style);
}

void SvgWriter::circle(double cx, double cy, double r, std::string_view style) {
  body_ += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>\n", num(cx), num(cy), num(r),
                       style);
}

void SvgWriter::line(double x1, double y1, double x2, double y2, std::string_view style) {
  body_ += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>\n", num(x1), num(y1),
                       num(x2), num(y2), style);
}

void SvgWriter::polyline(std::span<const Point> pts, std::string_view style) {
  std::string coords;
  for (const auto& p : pts) {
    if (!coords.empty()) coords += ' ';
    coords += num(p.x);
    coords += ',';
    coords += num(p.y);
  }
  body_ += fmt::format("<polyline points=\"{}\" {}/>\n", coords, style);
}

void SvgWriter::cubic(Point s, Point c1, Point c2, Point e, std::string_view style) {
  body_ += fmt::format("<path d=\"M{},{} C{},{} {},{} {},{}\" {}/>\n", num(s.x), num(s.y),
                       num(c1.x), num(c1.y), num(c2.x), num(c2.y), num(e.x), num(e.y), style);
}

void SvgWriter::text(double x, double y, std::string_view content, std::string_view style) {
  body_ += fmt::format("<text x=\"{}\" y=\"{}\" {}>{}</text>\n", num(x), num(y), style,
                       escape_xml(content));
}

void SvgWriter::open_group(std::string_view attributes) {
  body_ += fmt::format("<g {}>\n", attributes);
}

void SvgWriter::close_group() { body_ += "</g>\n"; }

std::string SvgWriter::finish() const {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n{2}</svg>\n",
      num(width_), num(height_), body_);
}

std::string render_radial_svg(const RadialLayout& layout, const Session& session,
                              const RadialSvgOptions& options) {
  const double size = options.size;
  const double half = size / 2.0;
  // outermost ring plus a margin must fit the canvas
  int max_ring = -1;
  for (const auto& r : layout.regions) max_ring = std::max(max_ring, r.ring_index);
  const double outer = max_ring >= 0 ? layout.config.semantic_radius(max_ring) : layout.config.rings.lift;
  const double scale = (half - 20.0) / std::max(outer, 1.0);
  auto map = [&](Point p) { return Point{half + p.x * scale, half + p.y * scale}; };

  SvgWriter svg(size, size);
  svg.rect(0, 0, size, size, "fill=\"#ffffff\"");

  // screen underlay inscribed in the touch ring
  const auto& dev = session.device;
  const double under_r = (layout.config.rings.touch - layout.config.max_arc_height) * scale * 0.95;
  const double diag = std::hypot(dev.width_px, dev.height_px);
  const double s = 2.0 * under_r / diag;
  const double ox = half - dev.width_px * s / 2.0;
  const double oy = half - dev.height_px * s / 2.0;
  svg.open_group("id=\"underlay\"");
  svg.rect(ox, oy, dev.width_px * s, dev.height_px * s,
           "fill=\"#f4f4f4\" stroke=\"#999999\" stroke-width=\"1\"");
  if (options.draw_trajectories) {
    for (const auto& g : session.gestures) {
      std::vector<Point> pts;
      for (const auto& p : g.points) pts.push_back({ox + p.x * s, oy + p.y * s});
      if (pts.size() == 1) {
        svg.circle(pts[0].x, pts[0].y, 1.5, "fill=\"#d62728\"");
      } else {
        svg.polyline(pts, "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\"");
      }
    }
  }
  svg.close_group();

  svg.open_group("id=\"rings\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"");
  for (double r : {layout.config.rings.touch, layout.config.rings.move, layout.config.rings.lift}) {
    svg.circle(half, half, r * scale, "");
  }
  for (const auto& reg : layout.regions) {
    svg.circle(half, half, layout.config.semantic_radius(reg.ring_index) * scale,
               "stroke-dasharray=\"4 3\"");
  }
  svg.close_group();
  for (const auto& reg : layout.regions) {
    const double r = layout.config.semantic_radius(reg.ring_index) * scale;
    svg.text(half + 4.0, half - r - 3.0, reg.label, "font-size=\"10\" fill=\"#555555\"");
  }

  svg.open_group("id=\"arcs\" fill=\"none\" stroke=\"#1f77b4\" stroke-opacity=\"0.6\"");
  for (const auto& a : layout.arcs) {
    svg.cubic(map(a.start), map(a.control1), map(a.control2), map(a.end), "");
  }
  svg.close_group();

  svg.open_group("id=\"dots\"");
  for (const auto& d : layout.dots) {
    const Point p = map(d.pos);
    std::string_view fill = d.ring == Ring::Touch ? "#2ca02c" : d.ring == Ring::Move ? "#ff7f0e" : "#d62728";
    svg.circle(p.x, p.y, 2.0, fmt::format("fill=\"{}\"", fill));
  }
  svg.close_group();

  svg.open_group("id=\"semantic\"");
  for (const auto& d : layout.semantic_dots) {
    const Point p = map(d.pos);
    svg.circle(p.x, p.y, 3.0,
               fmt::format("fill=\"{}\"", kPalette[static_cast<std::size_t>(d.region_id) % kPalette.size()]));
  }
  svg.close_group();
  return svg.finish();
}

std::string render_region_overlay_svg(const DeviceProfile& device, std::span<const Point> dots,
                                      std::span<const RegionOverlay> overlays, double scale) {
  SvgWriter svg(device.width_px * scale, device.height_px * scale);
  svg.rect(0, 0, device.width_px * scale, device.height_px * scale,
           "fill=\"#ffffff\" stroke=\"#333333\"");
  svg.open_group("id=\"dots\" fill=\"#1f77b4\" fill-opacity=\"0.3\"");
  for (const auto& p : dots) svg.circle(p.x * scale, p.y * scale, 1.0, "");
  svg.close_group();
  for (const auto& o : overlays) {
    const auto& r = o.region;
    svg.open_group(fmt::format("id=\"region-{}\"", escape_xml(o.label)));
    svg.circle(r.selection_center.x * scale, r.selection_center.y * scale,
               r.selection_radius * scale, "fill=\"#ffd700\" fill-opacity=\"0.15\" stroke=\"#e6b800\"");
    svg.circle(r.new_center.x * scale, r.new_center.y * scale, r.new_radius * scale,
               "fill=\"#2ca02c\" fill-opacity=\"0.25\" stroke=\"#2ca02c\"");
    svg.circle(r.original_center.x * scale, r.original_center.y * scale, 3.0, "fill=\"#d62728\"");
    svg.circle(r.new_center.x * scale, r.new_center.y * scale, 3.0, "fill=\"#2ca02c\"");
    svg.text(r.selection_center.x * scale, (r.selection_center.y - r.selection_radius) * scale - 4.0,
             fmt::format("{} c={}", o.label, r.confidence), "font-size=\"10\" fill=\"#333333\"");
    svg.close_group();
  }
  return svg.finish();
}

std::string render_cluster_svg(const DeviceProfile& device, const ClusterResult& result,
                               double scale) {
  SvgWriter svg(device.width_px * scale, device.height_px * scale);
  svg.rect(0, 0, device.width_px * scale, device.height_px * scale,
           "fill=\"#ffffff\" stroke=\"#333333\"");
  const auto sizes = result.cluster_sizes();
  for (std::size_t c = 0; c < result.centroids.size(); ++c) {
    std::vector<Point> pts;
    for (const auto& p : result.centroids[c].pts) pts.push_back({p.x * scale, p.y * scale});
    const auto color = kPalette[c % kPalette.size()];
    svg.open_group(fmt::format("id=\"cluster-{}\"", c));
    svg.polyline(pts, fmt::format("fill=\"none\" stroke=\"{}\" stroke-width=\"2\"", color));
    if (!pts.empty()) {
      svg.circle(pts.front().x, pts.front().y, 3.0, fmt::format("fill=\"{}\"", color));
      svg.text(pts.back().x + 4.0, pts.back().y, fmt::format("#{} ({})", c, sizes[c]),
               "font-size=\"10\" fill=\"#333333\"");
    }
    svg.close_group();
  }
  return svg.finish();
}

}  // namespace touchscope
