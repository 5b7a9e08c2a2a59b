#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "touchscope/clustering.hpp"
#include "touchscope/ingest.hpp"
#include "touchscope/metrics.hpp"
#include "touchscope/regions.hpp"
#include "touchscope/svg.hpp"

namespace touchscope {

enum class DotKind { Touch, Move };

std::string_view dot_kind_name(DotKind k) noexcept;

/// Positions of Down (touch) or Move events across all sessions, in session
/// then event order.
std::vector<Point> collect_dots(const std::vector<Session>& sessions, DotKind kind);

/// One UI-verification row: original radius, sampling number, original
/// center, original number, new center, new radius, new number, distance to
/// edge, distance to bottom, diameter.
struct ReportRow {
  std::string region;
  DotKind kind = DotKind::Touch;
  double confidence = 0.0;
  std::optional<ConfidenceRegion> fit;  // empty when the selection had no dots
  UiMetrics metrics;
  std::string flag;  // empty for a valid row
};

struct ReportTable {
  std::vector<ReportRow> rows;
  std::vector<RegionOverlay> overlays;
};

/// Fits a confidence region per region x dot kind x confidence. Regions on the
/// right half of the screen report distance to the right edge. An empty
/// selection yields a flagged row rather than an error.
ReportTable verify_ui(const std::vector<Session>& sessions,
                      const std::vector<SemanticRegion>& regions,
                      const std::vector<double>& confidences, const std::vector<DotKind>& kinds,
                      const DeviceProfile& device);

/// CSV rendering with fixed precision (px to 3 decimals, mm to 2).
std::string format_report_table(const ReportTable& table);

struct LabeledVector {
  std::string session_id;
  GestureVector vector;
};

/// Resampled gestures whose path length is at least `min_length_px`.
std::vector<LabeledVector> collect_gesture_vectors(const std::vector<Session>& sessions,
                                                   std::size_t n_samples, double min_length_px);

struct ClusterReportParams {
  std::size_t k = 0;
  std::size_t n_samples = 0;
  double weight_euclid = 0.0;
  double min_length_px = 0.0;
  std::uint64_t seed = 0;
};

/// Plain-text report: parameters, inertia, then per cluster its size and the
/// member closest to the centroid.
std::string format_cluster_report(const ClusterResult& result,
                                  const std::vector<LabeledVector>& inputs,
                                  const ClusterReportParams& params, const DistanceConfig& config);

}  // namespace touchscope
