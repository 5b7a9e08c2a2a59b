#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "touchscope/geometry.hpp"
#include "touchscope/ingest.hpp"
#include "touchscope/metrics.hpp"

namespace touchscope {

struct KMeansConfig {
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
  DistanceConfig distance;
};

struct ClusterResult {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;  // parallel to the input vectors
  std::vector<int> gesture_ids;         // parallel to the input vectors
  std::vector<GestureVector> centroids;
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  // inertia after each assignment step; non-increasing
  std::vector<double> inertia_history;

  std::vector<std::size_t> cluster_sizes() const;
};

/// Lloyd iteration under combined_distance. Seeding is farthest-first from a
/// seeded random first pick. Centroids move to the coordinate mean of their
/// members unless that would raise the cluster's summed distance, in which
/// case the previous centroid is kept, so recorded inertia never increases.
ClusterResult kmeans(std::span<const GestureVector> vectors, std::size_t k,
                     const KMeansConfig& config);

/// Circle fitted to the densest share `confidence` of a selection of dots.
struct ConfidenceRegion {
  Point selection_center;
  double selection_radius = 0.0;
  double confidence = 1.0;
  std::size_t sampling_count = 0;  // candidate dots before selection
  Point original_center;
  std::size_t original_count = 0;
  Point new_center;
  double new_radius = 0.0;
  std::size_t new_count = 0;
  std::vector<std::size_t> retained;  // indices into the input points
};

/// floor(c * n), guarding against products like 0.29 * 100 = 28.999...
std::size_t retained_count(double confidence, std::size_t n);

/// Selects the dots within `selection_radius` of `selection_center`, trims to
/// the floor(c*|S|) closest to their centroid, recenters on the trimmed set,
/// re-ranks all selected dots by distance to the new center and keeps the
/// closest floor(c*|S|) again. The new radius is the farthest kept dot.
ConfidenceRegion confidence_region(std::span<const Point> points, Point selection_center,
                                   double selection_radius, double confidence);

enum class HorizontalEdge { Left, Right };

struct UiMetrics {
  HorizontalEdge edge = HorizontalEdge::Left;
  double distance_to_edge_mm = 0.0;
  double distance_to_bottom_mm = 0.0;
  double diameter_mm = 0.0;
};

UiMetrics region_metrics(const ConfidenceRegion& region, const DeviceProfile& device,
                         HorizontalEdge edge = HorizontalEdge::Left);

}  // namespace touchscope
