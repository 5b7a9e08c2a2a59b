#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "touchscope/geometry.hpp"
#include "touchscope/ingest.hpp"

namespace touchscope {

/// Fixed-length, arc-length resampled gesture.
struct GestureVector {
  int gesture_id = 0;
  std::vector<Point> pts;
  double source_length = 0.0;  // arc length of the source polyline, px

  std::size_t size() const noexcept { return pts.size(); }
  friend bool operator==(const GestureVector&, const GestureVector&) = default;
};

struct DistanceConfig {
  double weight_euclid = 0.5;  // cosine term gets 1 - weight_euclid
  std::size_t n_samples = 32;
  double euclid_normalizer = 1.0;  // px; normally the screen diagonal
  bool center_for_cosine = false;  // subtract each vector's mean before the cosine term

  void validate() const;

  static DistanceConfig for_device(const DeviceProfile& device, double weight_euclid = 0.5,
                                   std::size_t n_samples = 32);
};

double path_length(std::span<const Point> polyline) noexcept;
double path_length(const Gesture& gesture) noexcept;

/// Samples `n` points evenly spaced in arc length along the polyline using
/// linear interpolation. Endpoints are copied exactly; a zero-length path
/// yields n copies of its first point. Throws InvalidSampleCount for n < 2.
GestureVector resample(std::span<const Point> polyline, std::size_t n, int gesture_id = 0);
GestureVector resample(const Gesture& gesture, std::size_t n);

/// Root of summed squared pointwise differences.
double euclid_distance(const GestureVector& v, const GestureVector& w);

/// Dot product of the two vectors flattened to 2N scalars over the product of
/// their norms, clamped to [-1, 1]. Throws ZeroNorm on an all-zero vector.
double cosine_similarity(const GestureVector& v, const GestureVector& w, bool center = false);

/// weight * d_euclid / normalizer + (1 - weight) * (1 - cos) / 2.
/// A term whose weight is zero is not evaluated.
double combined_distance(const GestureVector& v, const GestureVector& w,
                         const DistanceConfig& config);

/// `gesture_id,N,x0,y0,...` with shortest round-trip doubles.
std::string format_vector_record(const GestureVector& v);
GestureVector parse_vector_record(std::string_view record);

}  // namespace touchscope
