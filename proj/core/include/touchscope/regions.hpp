#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "touchscope/geometry.hpp"
#include "touchscope/ingest.hpp"

namespace touchscope {

/// Analyst-defined screen area (a skill button, the joystick) that gets its
/// own outer ring in the radial layout.
struct SemanticRegion {
  int region_id = 0;
  std::string label;
  int ring_index = 0;
  Circle shape;
};

/// One region per line: `label,ring,cx,cy,r`. Blank lines and `#` comments
/// are skipped. Region ids follow file order.
std::vector<SemanticRegion> parse_regions(std::string_view text);
std::string format_regions(const std::vector<SemanticRegion>& regions);

/// Checks screen bounds, unique ring indices and pairwise disjointness.
/// Circles that touch count as overlapping, so membership stays a partial
/// function. Throws InvalidRegion, OutOfBounds or AmbiguousRegions.
void validate_regions(const std::vector<SemanticRegion>& regions, const DeviceProfile& device);

/// Region containing `p`, or nullptr.
const SemanticRegion* region_at(const std::vector<SemanticRegion>& regions, Point p) noexcept;

}  // namespace touchscope
