#include "touchscope/regions.hpp"

#include <charconv>
#include <set>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {

std::vector<SemanticRegion> parse_regions(std::string_view text) {
  std::vector<SemanticRegion> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto bad = [&](std::string_view why) {
      return Error(ErrorCode::InvalidRegion, fmt::format("regions line {}: {}", line_no, why));
    };
    if (f.size() != 5) throw bad("expected label,ring,cx,cy,r");
    SemanticRegion r;
    r.region_id = static_cast<int>(out.size());
    r.label = std::string(f[0]);
    if (r.label.empty()) throw bad("empty label");
    auto num = [&](std::string_view s, auto& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw bad("bad number");
    };
    num(f[1], r.ring_index);
    num(f[2], r.shape.center.x);
    num(f[3], r.shape.center.y);
    num(f[4], r.shape.radius);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_regions(const std::vector<SemanticRegion>& regions) {
  std::string out;
  for (const auto& r : regions) {
    out += fmt::format("{},{},{},{},{}\n", r.label, r.ring_index, r.shape.center.x,
                       r.shape.center.y, r.shape.radius);
  }
  return out;
}

void validate_regions(const std::vector<SemanticRegion>& regions, const DeviceProfile& device) {
  std::set<int> rings;
  for (const auto& r : regions) {
    const auto& c = r.shape;
    if (!(c.radius >= 0.0) || r.ring_index < 0) {
      throw Error(ErrorCode::InvalidRegion,
                  fmt::format("region '{}' needs a non-negative radius and ring", r.label));
    }
    if (c.center.x - c.radius < 0.0 || c.center.y - c.radius < 0.0 ||
        c.center.x + c.radius > device.width_px || c.center.y + c.radius > device.height_px) {
      throw Error(ErrorCode::OutOfBounds,
                  fmt::format("region '{}' extends beyond the screen", r.label));
    }
    if (!rings.insert(r.ring_index).second) {
      throw Error(ErrorCode::InvalidRegion,
                  fmt::format("ring {} is used by more than one region", r.ring_index));
    }
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      const auto& a = regions[i].shape;
      const auto& b = regions[j].shape;
      if (distance(a.center, b.center) <= a.radius + b.radius) {
        throw Error(ErrorCode::AmbiguousRegions,
                    fmt::format("regions '{}' and '{}' overlap", regions[i].label,
                                regions[j].label));
      }
    }
  }
}

const SemanticRegion* region_at(const std::vector<SemanticRegion>& regions, Point p) noexcept {
  for (const auto& r : regions) {
    if (r.shape.contains(p)) return &r;
  }
  return nullptr;
}

}  // namespace touchscope
