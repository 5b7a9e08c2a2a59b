#include "touchscope/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {
namespace {

GestureVector coordinate_mean(std::span<const GestureVector> vectors,
                              const std::vector<std::size_t>& members, int id) {
  const std::size_t n = vectors.front().size();
  GestureVector c;
  c.gesture_id = id;
  c.pts.assign(n, Point{});
  for (std::size_t m : members) {
    for (std::size_t i = 0; i < n; ++i) {
      c.pts[i].x += vectors[m].pts[i].x;
      c.pts[i].y += vectors[m].pts[i].y;
    }
  }
  const auto count = static_cast<double>(members.size());
  for (auto& p : c.pts) {
    p.x /= count;
    p.y /= count;
  }
  c.source_length = path_length(c.pts);
  return c;
}

std::vector<GestureVector> farthest_first(std::span<const GestureVector> vectors, std::size_t k,
                                          const KMeansConfig& config) {
  std::mt19937_64 rng(config.seed);
  const std::size_t first = static_cast<std::size_t>(rng() % vectors.size());

  std::vector<GestureVector> centers;
  centers.push_back(vectors[first]);
  std::vector<double> nearest(vectors.size(), std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      nearest[i] = std::min(nearest[i], combined_distance(vectors[i], centers.back(), config.distance));
      if (nearest[i] > best) {
        best = nearest[i];
        pick = i;
      }
    }
    centers.push_back(vectors[pick]);
  }
  for (std::size_t c = 0; c < centers.size(); ++c) centers[c].gesture_id = static_cast<int>(c);
  return centers;
}

}  // namespace

std::vector<std::size_t> ClusterResult::cluster_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t a : assignment) ++sizes[a];
  return sizes;
}

ClusterResult kmeans(std::span<const GestureVector> vectors, std::size_t k,
                     const KMeansConfig& config) {
  config.distance.validate();
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (config.max_iterations == 0) {
    throw Error(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
  }
  if (k > vectors.size()) {
    throw Error(ErrorCode::TooFewPoints,
                fmt::format("k = {} exceeds the number of gesture vectors ({})", k, vectors.size()));
  }
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  fmt::format("gesture {} has {} samples, expected {}", v.gesture_id, v.size(), n));
    }
  }

  const auto& dcfg = config.distance;
  ClusterResult result;
  result.k = k;
  result.seed = config.seed;
  result.gesture_ids.reserve(vectors.size());
  for (const auto& v : vectors) result.gesture_ids.push_back(v.gesture_id);
  result.centroids = farthest_first(vectors, k, config);

  std::vector<std::size_t> assignment(vectors.size(), k);  // k = unassigned
  std::vector<double> dist(vectors.size(), 0.0);

  for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
    // assignment step; ties go to the lowest cluster index
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = combined_distance(vectors[i], result.centroids[c], dcfg);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      // keep the current cluster when it is as close as the best one
      if (assignment[i] < k && assignment[i] != best) {
        const double cur = combined_distance(vectors[i], result.centroids[assignment[i]], dcfg);
        if (cur <= best_d) {
          best = assignment[i];
          best_d = cur;
        }
      }
      assignment[i] = best;
      dist[i] = best_d;
    }

    // re-seed empty clusters with the member farthest from its centroid,
    // taken from clusters that can spare one
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : assignment) ++sizes[a];
    bool reseeded = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = vectors.size();
      double far_d = -1.0;
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (sizes[assignment[i]] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      if (far == vectors.size()) break;
      --sizes[assignment[far]];
      assignment[far] = c;
      ++sizes[c];
      result.centroids[c] = vectors[far];
      result.centroids[c].gesture_id = static_cast<int>(c);
      dist[far] = 0.0;
      reseeded = true;
    }

    std::vector<GestureVector> assigned_against = result.centroids;
    const double inertia = std::accumulate(dist.begin(), dist.end(), 0.0);
    result.inertia_history.push_back(inertia);
    result.inertia = inertia;
    result.iterations = iter + 1;

    // update step
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < vectors.size(); ++i) members[assignment[i]].push_back(i);
    bool moved = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c].empty()) continue;
      GestureVector candidate = coordinate_mean(vectors, members[c], static_cast<int>(c));
      double old_sum = 0.0;
      double new_sum = 0.0;
      for (std::size_t m : members[c]) {
        old_sum += dist[m];
        new_sum += combined_distance(vectors[m], candidate, dcfg);
      }
      if (new_sum < old_sum && candidate.pts != result.centroids[c].pts) {
        result.centroids[c] = std::move(candidate);
        moved = true;
      }
    }
    // unchanged centroids reproduce the same assignment
    if (!moved && !reseeded) break;
    if (iter + 1 == config.max_iterations) {
      // report the centroids the final assignment was made against
      result.centroids = std::move(assigned_against);
    }
  }

  result.assignment = std::move(assignment);
  return result;
}

std::size_t retained_count(double confidence, std::size_t n) {
  const double product = confidence * static_cast<double>(n);
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(product));
}

ConfidenceRegion confidence_region(std::span<const Point> points, Point selection_center,
                                   double selection_radius, double confidence) {
  if (!(confidence > 0.0 && confidence <= 1.0)) {
    throw Error(ErrorCode::InvalidConfidence,
                fmt::format("confidence must lie in (0, 1], got {}", confidence));
  }
  if (!(selection_radius >= 0.0) || !std::isfinite(selection_radius)) {
    throw Error(ErrorCode::InvalidArgument, "selection radius must be finite and non-negative");
  }

  ConfidenceRegion r;
  r.selection_center = selection_center;
  r.selection_radius = selection_radius;
  r.confidence = confidence;
  r.sampling_count = points.size();

  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (distance(points[i], selection_center) <= selection_radius) selected.push_back(i);
  }
  if (selected.empty()) {
    throw Error(ErrorCode::EmptySelection,
                fmt::format("no dots within {} px of ({}, {})", selection_radius,
                            selection_center.x, selection_center.y));
  }
  r.original_count = selected.size();

  auto centroid = [&](std::span<const std::size_t> idx) {
    Point c;
    for (std::size_t i : idx) {
      c.x += points[i].x;
      c.y += points[i].y;
    }
    const auto n = static_cast<double>(idx.size());
    return Point{c.x / n, c.y / n};
  };
  const std::size_t keep = retained_count(confidence, selected.size());
  auto closest = [&](Point center) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(selected.size());
    for (std::size_t i : selected) ranked.emplace_back(distance(points[i], center), i);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    ranked.resize(keep);
    return ranked;
  };

  r.original_center = centroid(selected);
  r.new_count = keep;
  if (keep == 0) {
    r.new_center = r.original_center;
    return r;
  }

  std::vector<std::size_t> trimmed;
  for (const auto& [d, i] : closest(r.original_center)) trimmed.push_back(i);
  r.new_center = centroid(trimmed);

  const auto reranked = closest(r.new_center);
  r.new_radius = reranked.back().first;
  r.retained.reserve(keep);
  for (const auto& [d, i] : reranked) r.retained.push_back(i);
  return r;
}

UiMetrics region_metrics(const ConfidenceRegion& region, const DeviceProfile& device,
                         HorizontalEdge edge) {
  device.validate();
  const Point c = region.new_center;
  if (!(c.x >= 0.0 && c.x <= device.width_px && c.y >= 0.0 && c.y <= device.height_px)) {
    throw Error(ErrorCode::OutOfBounds,
                fmt::format("region center ({}, {}) lies outside the {}x{} screen", c.x, c.y,
                            device.width_px, device.height_px));
  }
  UiMetrics m;
  m.edge = edge;
  const double dx = edge == HorizontalEdge::Left ? c.x : device.width_px - c.x;
  m.distance_to_edge_mm = px_to_mm(dx, device, Axis::Width);
  m.distance_to_bottom_mm = px_to_mm(device.height_px - c.y, device, Axis::Height);
  m.diameter_mm = px_to_mm(2.0 * region.new_radius, device, Axis::Isotropic);
  return m;
}

}  // namespace touchscope
