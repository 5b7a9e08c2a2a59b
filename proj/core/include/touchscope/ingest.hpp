#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "touchscope/geometry.hpp"

namespace touchscope {

enum class Action { Down, Move, Up };

char action_code(Action a) noexcept;
std::optional<Action> parse_action(std::string_view code) noexcept;

struct TouchEvent {
  int pointer_id = 0;
  Action action = Action::Down;
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;  // ms since session start

  Point position() const noexcept { return {x, y}; }
  friend bool operator==(const TouchEvent&, const TouchEvent&) = default;
};

enum class Orientation { LandscapeLeft, Portrait };

enum class Axis { Width, Height, Isotropic };

/// Screen geometry of the capture device. Physical extents drive every mm
/// figure in reports.
struct DeviceProfile {
  double width_px = 0.0;
  double height_px = 0.0;
  double width_mm = 0.0;
  double height_mm = 0.0;
  Orientation orientation = Orientation::LandscapeLeft;

  /// Throws Error{InvalidDevice} unless all extents are finite and positive.
  void validate() const;

  double mm_per_px_width() const noexcept { return width_mm / width_px; }
  double mm_per_px_height() const noexcept { return height_mm / height_px; }
  double diagonal_px() const noexcept;

  /// 1920x1080 px, 110.7 x 62.3 mm Android phone used in the joystick study.
  static DeviceProfile reference_phone() noexcept;

  friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

struct PxToMmOptions {
  // Reject isotropic conversions when the axis factors differ by more than 1%.
  bool strict = false;
};

/// Converts a pixel length along `axis` to millimetres. Isotropic lengths
/// (radii, diameters) use the width factor.
double px_to_mm(double px, const DeviceProfile& device, Axis axis,
                PxToMmOptions options = {});

struct GesturePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  std::size_t event_index = 0;  // index into Session::events

  Point position() const noexcept { return {x, y}; }
};

struct Gesture {
  int gesture_id = 0;
  int pointer_id = 0;
  std::vector<GesturePoint> points;
  double start_t = 0.0;
  double end_t = 0.0;
  // Down without a matching Up; closed at the pointer's last observed event.
  bool force_closed = false;

  double duration() const noexcept { return end_t - start_t; }
  std::vector<Point> polyline() const;
};

struct LineRejection {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ValidationReport {
  std::size_t data_lines = 0;
  std::vector<LineRejection> rejected;
  std::vector<std::size_t> orphan_events;  // indices into Session::events

  bool clean() const noexcept { return rejected.empty() && orphan_events.empty(); }
};

struct Session {
  std::string session_id;
  DeviceProfile device;
  std::vector<TouchEvent> events;
  std::vector<Gesture> gestures;
  std::map<std::string, std::string> metadata;
  ValidationReport report;

  double start_t() const noexcept;
  double end_t() const noexcept;
  const Gesture* find_gesture(int gesture_id) const noexcept;
};

/// Parses a newline-delimited touch log:
///
///   #device,width_px,height_px,width_mm,height_mm[,orientation]
///   #meta,key,value            (optional, repeatable)
///   t_ms,pointer_id,action,x_px,y_px
///
/// with action one of D, M, U. Timestamps are shifted so the earliest
/// accepted event is at t = 0. Malformed lines are recorded in the session's
/// validation report; more than 10% malformed data lines is fatal.
Session parse_log(std::string_view text, std::string session_id = {});
Session parse_log(std::istream& in, std::string session_id = {});

/// Inverse of parse_log for the accepted events (doubles are written in
/// shortest round-trip form).
std::string serialize_log(const Session& session);

/// Partitions events into gestures per pointer id. Gesture ids follow
/// ascending (start_t, pointer_id). Move/Up without an open Down become
/// orphans listed in the validation report.
void segment_gestures(Session& session);

/// parse_log followed by segment_gestures.
Session load_session(std::string_view text, std::string session_id = {});

std::string format_validation_report(const Session& session);

}  // namespace touchscope
