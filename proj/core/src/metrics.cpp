#include "touchscope/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {
namespace {

void require_same_size(const GestureVector& v, const GestureVector& w) {
  if (v.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("gesture vectors have {} and {} samples", v.size(), w.size()));
  }
}

Point mean_point(const std::vector<Point>& pts) {
  Point m;
  for (const auto& p : pts) {
    m.x += p.x;
    m.y += p.y;
  }
  const auto n = static_cast<double>(pts.size());
  return {m.x / n, m.y / n};
}

}  // namespace

void DistanceConfig::validate() const {
  if (!(weight_euclid >= 0.0 && weight_euclid <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("weight_euclid must lie in [0,1], got {}", weight_euclid));
  }
  if (n_samples < 2) {
    throw Error(ErrorCode::InvalidSampleCount,
                fmt::format("sample count must be at least 2, got {}", n_samples));
  }
  if (!(euclid_normalizer > 0.0) || !std::isfinite(euclid_normalizer)) {
    throw Error(ErrorCode::InvalidArgument, "euclid_normalizer must be finite and positive");
  }
}

DistanceConfig DistanceConfig::for_device(const DeviceProfile& device, double weight_euclid,
                                          std::size_t n_samples) {
  DistanceConfig c;
  c.weight_euclid = weight_euclid;
  c.n_samples = n_samples;
  c.euclid_normalizer = device.diagonal_px();
  return c;
}

double path_length(std::span<const Point> polyline) noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) total += distance(polyline[i - 1], polyline[i]);
  return total;
}

double path_length(const Gesture& gesture) noexcept {
  const auto pl = gesture.polyline();
  return path_length(pl);
}

GestureVector resample(std::span<const Point> polyline, std::size_t n, int gesture_id) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidSampleCount,
                fmt::format("sample count must be at least 2, got {}", n));
  }
  if (polyline.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot resample an empty polyline");
  }

  // cumulative[i] = arc length from the first vertex to vertex i
  std::vector<double> cumulative(polyline.size(), 0.0);
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + distance(polyline[i - 1], polyline[i]);
  }
  const double total = cumulative.back();

  GestureVector out;
  out.gesture_id = gesture_id;
  out.source_length = total;
  out.pts.reserve(n);
  if (total == 0.0) {
    out.pts.assign(n, polyline.front());
    return out;
  }

  out.pts.push_back(polyline.front());
  const double step = total / static_cast<double>(n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = static_cast<double>(i) * step;
    // first vertex strictly beyond u; the segment [j-1, j] has positive length
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto j = static_cast<std::size_t>(it - cumulative.begin());
    if (j == cumulative.size()) {
      out.pts.push_back(polyline.back());
      continue;
    }
    const Point a = polyline[j - 1];
    const Point b = polyline[j];
    if (u == cumulative[j - 1]) {
      out.pts.push_back(a);
      continue;
    }
    const double f = (u - cumulative[j - 1]) / (cumulative[j] - cumulative[j - 1]);
    out.pts.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)});
  }
  out.pts.push_back(polyline.back());
  return out;
}

GestureVector resample(const Gesture& gesture, std::size_t n) {
  const auto pl = gesture.polyline();
  return resample(pl, n, gesture.gesture_id);
}

double euclid_distance(const GestureVector& v, const GestureVector& w) {
  require_same_size(v, w);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double dx = w.pts[i].x - v.pts[i].x;
    const double dy = w.pts[i].y - v.pts[i].y;
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum);
}

double cosine_similarity(const GestureVector& v, const GestureVector& w, bool center) {
  require_same_size(v, w);
  const Point cv = center ? mean_point(v.pts) : Point{};
  const Point cw = center ? mean_point(w.pts) : Point{};
  double dot = 0.0;
  double nv = 0.0;
  double nw = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vx = v.pts[i].x - cv.x;
    const double vy = v.pts[i].y - cv.y;
    const double wx = w.pts[i].x - cw.x;
    const double wy = w.pts[i].y - cw.y;
    dot += vx * wx + vy * wy;
    nv += vx * vx + vy * vy;
    nw += wx * wx + wy * wy;
  }
  if (nv == 0.0 || nw == 0.0) {
    throw Error(ErrorCode::ZeroNorm,
                fmt::format("cosine similarity undefined for zero vector (gestures {} and {})",
                            v.gesture_id, w.gesture_id));
  }
  return std::clamp(dot / (std::sqrt(nv) * std::sqrt(nw)), -1.0, 1.0);
}

double combined_distance(const GestureVector& v, const GestureVector& w,
                         const DistanceConfig& config) {
  require_same_size(v, w);
  double result = 0.0;
  if (config.weight_euclid > 0.0) {
    result += config.weight_euclid * (euclid_distance(v, w) / config.euclid_normalizer);
  }
  if (config.weight_euclid < 1.0) {
    const double cos = cosine_similarity(v, w, config.center_for_cosine);
    result += (1.0 - config.weight_euclid) * (1.0 - cos) / 2.0;
  }
  return result;
}

std::string format_vector_record(const GestureVector& v) {
  auto num = [](double d) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, ptr);
  };
  std::string out = fmt::format("{},{}", v.gesture_id, v.size());
  for (const auto& p : v.pts) {
    out += ',';
    out += num(p.x);
    out += ',';
    out += num(p.y);
  }
  return out;
}

GestureVector parse_vector_record(std::string_view record) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = record.find(',', start);
    fields.push_back(record.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "malformed gesture vector record"); };
  if (fields.size() < 2) throw bad();
  GestureVector v;
  std::size_t n = 0;
  if (std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), v.gesture_id).ec !=
          std::errc{} ||
      std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), n).ec != std::errc{}) {
    throw bad();
  }
  if (fields.size() != 2 + 2 * n) throw bad();
  v.pts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fx = fields[2 + 2 * i];
    const auto& fy = fields[3 + 2 * i];
    if (std::from_chars(fx.data(), fx.data() + fx.size(), v.pts[i].x).ec != std::errc{} ||
        std::from_chars(fy.data(), fy.data() + fy.size(), v.pts[i].y).ec != std::errc{}) {
      throw bad();
    }
  }
  v.source_length = path_length(v.pts);
  return v;
}

}  // namespace touchscope
