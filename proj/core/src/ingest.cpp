#include "touchscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {
namespace {

constexpr int kMaxPointerId = 255;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

DeviceProfile parse_device_header(const std::vector<std::string_view>& f, std::size_t line_no) {
  if (f.size() != 5 && f.size() != 6) {
    throw Error(ErrorCode::CorruptLog,
                fmt::format("line {}: #device header needs width_px,height_px,width_mm,height_mm", line_no));
  }
  DeviceProfile d;
  double* dims[] = {&d.width_px, &d.height_px, &d.width_mm, &d.height_mm};
  for (std::size_t i = 0; i < 4; ++i) {
    auto v = parse_double(f[i + 1]);
    if (!v) {
      throw Error(ErrorCode::CorruptLog,
                  fmt::format("line {}: bad device dimension '{}'", line_no, f[i + 1]));
    }
    *dims[i] = *v;
  }
  if (f.size() == 6) {
    if (f[5] == "portrait") {
      d.orientation = Orientation::Portrait;
    } else if (f[5] != "landscape") {
      throw Error(ErrorCode::CorruptLog,
                  fmt::format("line {}: unknown orientation '{}'", line_no, f[5]));
    }
  }
  d.validate();
  return d;
}

}  // namespace

char action_code(Action a) noexcept {
  switch (a) {
    case Action::Down: return 'D';
    case Action::Move: return 'M';
    case Action::Up: return 'U';
  }
  return '?';
}

std::optional<Action> parse_action(std::string_view code) noexcept {
  if (code == "D") return Action::Down;
  if (code == "M") return Action::Move;
  if (code == "U") return Action::Up;
  return std::nullopt;
}

void DeviceProfile::validate() const {
  for (double v : {width_px, height_px, width_mm, height_mm}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::InvalidDevice,
                  fmt::format("device dimensions must be finite and positive "
                              "({}x{} px, {}x{} mm)",
                              width_px, height_px, width_mm, height_mm));
    }
  }
}

double DeviceProfile::diagonal_px() const noexcept { return std::hypot(width_px, height_px); }

DeviceProfile DeviceProfile::reference_phone() noexcept {
  return DeviceProfile{1920.0, 1080.0, 110.7, 62.3, Orientation::LandscapeLeft};
}

double px_to_mm(double px, const DeviceProfile& device, Axis axis, PxToMmOptions options) {
  device.validate();
  switch (axis) {
    case Axis::Width: return px * device.mm_per_px_width();
    case Axis::Height: return px * device.mm_per_px_height();
    case Axis::Isotropic: {
      const double fw = device.mm_per_px_width();
      const double fh = device.mm_per_px_height();
      if (options.strict && std::abs(fw - fh) > 0.01 * std::max(fw, fh)) {
        throw Error(ErrorCode::AnisotropicDevice,
                    fmt::format("mm/px factors differ by more than 1% ({} vs {})", fw, fh));
      }
      return px * fw;
    }
  }
  return px;
}

std::vector<Point> Gesture::polyline() const {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.position());
  return out;
}

double Session::start_t() const noexcept {
  double lo = events.empty() ? 0.0 : events.front().t;
  for (const auto& e : events) lo = std::min(lo, e.t);
  return lo;
}

double Session::end_t() const noexcept {
  double hi = events.empty() ? 0.0 : events.front().t;
  for (const auto& e : events) hi = std::max(hi, e.t);
  return hi;
}

const Gesture* Session::find_gesture(int gesture_id) const noexcept {
  if (gesture_id >= 0 && static_cast<std::size_t>(gesture_id) < gestures.size() &&
      gestures[gesture_id].gesture_id == gesture_id) {
    return &gestures[gesture_id];
  }
  auto it = std::find_if(gestures.begin(), gestures.end(),
                         [&](const Gesture& g) { return g.gesture_id == gesture_id; });
  return it == gestures.end() ? nullptr : &*it;
}

Session parse_log(std::string_view text, std::string session_id) {
  Session session;
  session.session_id = std::move(session_id);
  std::optional<DeviceProfile> device;
  std::map<int, double> last_t;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto f = split_fields(line);
    if (line.front() == '#') {
      if (f[0] == "#device") {
        if (device) {
          session.report.rejected.push_back({line_no, "duplicate #device header"});
          continue;
        }
        device = parse_device_header(f, line_no);
      } else if (f[0] == "#meta" && f.size() >= 3) {
        session.metadata[std::string(f[1])] = std::string(f[2]);
      }
      continue;
    }

    ++session.report.data_lines;
    auto reject = [&](std::string reason) {
      session.report.rejected.push_back({line_no, std::move(reason)});
    };
    if (f.size() != 5) {
      reject(fmt::format("expected 5 fields, got {}", f.size()));
      continue;
    }
    const auto t = parse_double(f[0]);
    const auto pid = parse_int(f[1]);
    const auto action = parse_action(f[2]);
    const auto x = parse_double(f[3]);
    const auto y = parse_double(f[4]);
    if (!t || !x || !y) {
      reject("unparseable number");
      continue;
    }
    if (!pid || *pid < 0 || *pid > kMaxPointerId) {
      reject(fmt::format("bad pointer id '{}'", f[1]));
      continue;
    }
    if (!action) {
      reject(fmt::format("unknown action '{}'", f[2]));
      continue;
    }
    if (!std::isfinite(*t) || !std::isfinite(*x) || !std::isfinite(*y)) {
      reject("non-finite value");
      continue;
    }
    if (auto it = last_t.find(*pid); it != last_t.end() && *t < it->second) {
      reject(fmt::format("timestamp goes backwards for pointer {}", *pid));
      continue;
    }
    last_t[*pid] = *t;
    session.events.push_back(TouchEvent{*pid, *action, *x, *y, *t});
  }

  if (session.report.data_lines == 0) {
    throw Error(ErrorCode::EmptyLog, "log contains no touch records");
  }
  if (!device) {
    throw Error(ErrorCode::CorruptLog, "missing #device header");
  }
  session.device = *device;

  const auto& rejected = session.report.rejected;
  std::size_t bad_data = 0;
  for (const auto& r : rejected) {
    if (r.reason != "duplicate #device header") ++bad_data;
  }
  if (bad_data * 10 > session.report.data_lines) {
    std::string lines;
    for (std::size_t i = 0; i < rejected.size() && i < 20; ++i) {
      lines += fmt::format("{}{}", i ? "," : "", rejected[i].line);
    }
    if (rejected.size() > 20) lines += ",...";
    throw Error(ErrorCode::CorruptLog,
                fmt::format("{} of {} records malformed (lines {})", bad_data,
                            session.report.data_lines, lines));
  }

  if (!session.events.empty()) {
    const double t0 = session.start_t();
    if (t0 != 0.0) {
      for (auto& e : session.events) e.t -= t0;
    }
  }
  return session;
}

Session parse_log(std::istream& in, std::string session_id) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_log(std::string_view(text), std::move(session_id));
}

std::string serialize_log(const Session& session) {
  const auto& d = session.device;
  std::string out = fmt::format("#device,{},{},{},{},{}\n", shortest(d.width_px),
                                shortest(d.height_px), shortest(d.width_mm),
                                shortest(d.height_mm),
                                d.orientation == Orientation::Portrait ? "portrait" : "landscape");
  for (const auto& [k, v] : session.metadata) out += fmt::format("#meta,{},{}\n", k, v);
  for (const auto& e : session.events) {
    out += fmt::format("{},{},{},{},{}\n", shortest(e.t), e.pointer_id, action_code(e.action),
                       shortest(e.x), shortest(e.y));
  }
  return out;
}

void segment_gestures(Session& session) {
  session.gestures.clear();
  session.report.orphan_events.clear();

  std::vector<Gesture> done;
  std::map<int, Gesture> open;
  auto close = [&](int pointer, bool forced) {
    auto node = open.extract(pointer);
    Gesture& g = node.mapped();
    g.force_closed = forced;
    g.end_t = g.points.back().t;
    done.push_back(std::move(g));
  };

  for (std::size_t i = 0; i < session.events.size(); ++i) {
    const auto& e = session.events[i];
    const GesturePoint gp{e.x, e.y, e.t, i};
    switch (e.action) {
      case Action::Down: {
        if (open.count(e.pointer_id)) close(e.pointer_id, true);
        Gesture g;
        g.pointer_id = e.pointer_id;
        g.start_t = e.t;
        g.points.push_back(gp);
        open.emplace(e.pointer_id, std::move(g));
        break;
      }
      case Action::Move:
      case Action::Up: {
        auto it = open.find(e.pointer_id);
        if (it == open.end()) {
          session.report.orphan_events.push_back(i);
          break;
        }
        it->second.points.push_back(gp);
        if (e.action == Action::Up) close(e.pointer_id, false);
        break;
      }
    }
  }
  while (!open.empty()) close(open.begin()->first, true);

  std::stable_sort(done.begin(), done.end(), [](const Gesture& a, const Gesture& b) {
    if (a.start_t != b.start_t) return a.start_t < b.start_t;
    return a.pointer_id < b.pointer_id;
  });
  for (std::size_t i = 0; i < done.size(); ++i) done[i].gesture_id = static_cast<int>(i);
  session.gestures = std::move(done);
}

Session load_session(std::string_view text, std::string session_id) {
  Session s = parse_log(text, std::move(session_id));
  segment_gestures(s);
  return s;
}

std::string format_validation_report(const Session& session) {
  std::string out;
  for (const auto& r : session.report.rejected) {
    out += fmt::format("line {}: {}\n", r.line, r.reason);
  }
  for (std::size_t idx : session.report.orphan_events) {
    const auto& e = session.events[idx];
    out += fmt::format("event {}: orphan {} for pointer {} at t={}\n", idx, action_code(e.action),
                       e.pointer_id, shortest(e.t));
  }
  return out;
}

}  // namespace touchscope
