#pragma once

#include <nlohmann/json.hpp>

#include "touchscope/clustering.hpp"
#include "touchscope/ingest.hpp"
#include "touchscope/layout.hpp"
#include "touchscope/regions.hpp"

// Structured-data schema shared by the service and the CLI's --json output.
// Field names are documented in docs/schema.md; keep the two in sync.

namespace touchscope {

using Json = nlohmann::json;

std::string_view action_name(Action a) noexcept;
std::string_view ring_name(Ring r) noexcept;
std::string_view query_mode_name(QueryMode m) noexcept;

Json to_json(Point p);
Json to_json(const DeviceProfile& device);
Json session_summary(const Session& session);
Json to_json(const Gesture& gesture);
Json to_json(const RadialLayout& layout);
Json to_json(const std::vector<SemanticDot>& dots);
Json to_json(const QueryResult& result);
Json to_json(const HeatmapGrid& grid);
Json to_json(const ClusterResult& result);
Json to_json(const ConfidenceRegion& region);
Json to_json(const UiMetrics& metrics);
Json to_json(const SemanticRegion& region);
Json to_json(const std::vector<SemanticRegion>& regions);

// Request-side parsers; malformed input throws Error{InvalidArgument}.
QueryArea query_area_from_json(const Json& j);
QueryMode query_mode_from_json(const Json& j);
std::vector<SemanticRegion> regions_from_json(const Json& j);
std::set<Action> action_filter_from_string(std::string_view csv);

}  // namespace touchscope
