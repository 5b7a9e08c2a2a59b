#include "touchscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace touchscope::synth {
namespace {

double round_to(double v, double unit) { return std::round(v / unit) * unit; }

Point jitter_in(Rng& rng, const Circle& c, double spread) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Point p{rng.normal(c.center.x, spread * c.radius), rng.normal(c.center.y, spread * c.radius)};
    if (distance(p, c.center) <= 0.9 * c.radius) return p;
  }
  return c.center;
}

std::vector<Point> straight(Point from, double angle, double length, std::size_t samples) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(samples - 1);
    out.push_back({from.x + f * length * std::cos(angle), from.y + f * length * std::sin(angle)});
  }
  return out;
}

}  // namespace

double Rng::normal(double mean, double stddev) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1]
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

GameUi reference_ui() {
  GameUi ui;
  ui.joystick = {{260.0, 820.0}, 200.0};
  const std::vector<std::pair<std::string, Circle>> buttons = {
      {"Normal Attack", {{1700.0, 880.0}, 110.0}},
      {"skill 1", {{1500.0, 960.0}, 60.0}},
      {"skill 2", {{1490.0, 780.0}, 60.0}},
      {"skill 3", {{1600.0, 660.0}, 60.0}},
      {"skill 4", {{1790.0, 660.0}, 60.0}},
  };
  for (std::size_t i = 0; i < buttons.size(); ++i) {
    ui.skills.push_back({static_cast<int>(i), buttons[i].first, static_cast<int>(i), buttons[i].second});
  }
  return ui;
}

std::vector<SemanticRegion> skill_regions() { return reference_ui().skills; }

std::vector<SemanticRegion> verification_regions() {
  auto ui = reference_ui();
  std::vector<SemanticRegion> out;
  out.push_back({0, "joystick", 0, ui.joystick});
  for (auto r : ui.skills) {
    r.region_id = static_cast<int>(out.size());
    r.ring_index = r.region_id;
    out.push_back(std::move(r));
  }
  return out;
}

SessionScript::SessionScript(std::string session_id, DeviceProfile device)
    : session_id_(std::move(session_id)), device_(device) {}

void SessionScript::tap(int pointer, Point at, double t, double hold_ms) {
  const double x = round_to(at.x, 0.1);
  const double y = round_to(at.y, 0.1);
  const double t0 = std::round(t);
  events_.push_back({{pointer, Action::Down, x, y, t0}, events_.size()});
  events_.push_back({{pointer, Action::Up, x, y, t0 + std::max(1.0, std::round(hold_ms))}, events_.size()});
}

void SessionScript::drag(int pointer, const std::vector<Point>& path, double t0, double t1) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double f = path.size() > 1 ? static_cast<double>(i) / static_cast<double>(path.size() - 1) : 0.0;
    const Action a = i == 0 ? Action::Down : (i + 1 == path.size() ? Action::Up : Action::Move);
    events_.push_back({{pointer, a, round_to(path[i].x, 0.1), round_to(path[i].y, 0.1),
                        std::round(t0 + f * (t1 - t0))},
                       events_.size()});
  }
}

void SessionScript::add_meta(std::string key, std::string value) {
  meta_[std::move(key)] = std::move(value);
}

Session SessionScript::finish() const {
  auto sorted = events_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Stamped& a, const Stamped& b) {
    if (a.event.t != b.event.t) return a.event.t < b.event.t;
    return a.seq < b.seq;
  });
  Session s;
  s.session_id = session_id_;
  s.device = device_;
  s.metadata = meta_;
  for (const auto& e : sorted) s.events.push_back(e.event);
  // round-trip through the log format so scripted and parsed sessions agree
  return load_session(serialize_log(s), session_id_);
}

std::vector<Point> joystick_wander(Rng& rng, const Circle& joystick, double duration_ms,
                                   double step_ms) {
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::floor(duration_ms / step_ms)));
  std::vector<Point> out;
  out.push_back(jitter_in(rng, {joystick.center, joystick.radius}, 0.15));
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  double reach = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    heading += rng.normal(0.0, 0.12);
    reach = std::clamp(reach + rng.normal(4.0, 6.0), 0.0, 0.8 * joystick.radius);
    const Point target{joystick.center.x + reach * std::cos(heading),
                       joystick.center.y + reach * std::sin(heading)};
    const Point prev = out.back();
    out.push_back({prev.x + 0.5 * (target.x - prev.x), prev.y + 0.5 * (target.y - prev.y)});
  }
  return out;
}

Session novice_session(std::uint64_t seed) {
  Rng rng(seed);
  const auto ui = reference_ui();
  SessionScript script(fmt::format("novice-{}", seed));
  script.add_meta("participant", "novice");

  script.drag(0, joystick_wander(rng, ui.joystick, 3500.0, 50.0), 0.0, 3500.0);
  script.drag(0, joystick_wander(rng, ui.joystick, 4000.0, 50.0), 5000.0, 9000.0);
  script.drag(0, joystick_wander(rng, ui.joystick, 107000.0, 50.0), 13000.0, 120000.0);

  // Normal Attack first, then skills 1-4 clockwise; Normal Attack repeats
  // while the skills cool down.
  for (double cycle = 15000.0; cycle + 6000.0 < 118000.0; cycle += 7000.0) {
    for (std::size_t s = 0; s < ui.skills.size(); ++s) {
      script.tap(1, jitter_in(rng, ui.skills[s].shape, 0.25),
                 cycle + 300.0 * static_cast<double>(s), rng.uniform(70.0, 130.0));
    }
    for (double extra : {2500.0, 4000.0, 5500.0}) {
      script.tap(1, jitter_in(rng, ui.skills[0].shape, 0.25), cycle + extra, rng.uniform(70.0, 130.0));
    }
  }
  return script.finish();
}

Session expert_session(std::uint64_t seed) {
  Rng rng(seed);
  const auto ui = reference_ui();
  SessionScript script(fmt::format("expert-{}", seed));
  script.add_meta("participant", "expert");

  // skill combos rotate so each cooldown has elapsed before reuse
  const std::vector<std::vector<std::size_t>> combos = {{0, 2, 0, 3}, {0, 1, 0, 4}, {0, 3, 0, 2}};
  double t = 0.0;
  for (std::size_t cycle = 0; t + 8000.0 <= 120000.0; ++cycle) {
    const double move_ms = rng.uniform(2500.0, 4000.0);
    script.drag(0, joystick_wander(rng, ui.joystick, move_ms, 50.0), t, t + move_ms);
    double at = t + move_ms + 200.0;
    for (std::size_t s : combos[cycle % combos.size()]) {
      script.tap(1, jitter_in(rng, ui.skills[s].shape, 0.2), at, rng.uniform(60.0, 110.0));
      at += rng.uniform(350.0, 550.0);
    }
    t = at + rng.uniform(1500.0, 2500.0);
  }
  return script.finish();
}

MotifFixture two_motif_fixture(std::uint64_t seed, std::size_t sessions, std::size_t per_session) {
  Rng rng(seed);
  const auto ui = reference_ui();
  MotifFixture out;
  for (std::size_t s = 0; s < sessions; ++s) {
    SessionScript script(fmt::format("motif-{:02}", s));
    std::vector<int> labels;
    double t = 0.0;
    for (std::size_t g = 0; g < per_session; ++g) {
      const int label = static_cast<int>(rng.bits() & 1U);
      const double base = label == 0 ? std::numbers::pi : 0.0;
      const double angle = base + rng.uniform(-0.17, 0.17);
      const Point from{rng.normal(ui.joystick.center.x, 10.0), rng.normal(ui.joystick.center.y, 10.0)};
      const double length = rng.uniform(135.0, 165.0);
      script.drag(0, straight(from, angle, length, 12), t, t + 300.0);
      labels.push_back(label);
      t += 1000.0;
    }
    out.sessions.push_back(script.finish());
    out.labels.insert(out.labels.end(), labels.begin(), labels.end());
  }
  return out;
}

std::vector<Session> study_corpus(std::uint64_t seed, std::size_t sessions) {
  Rng rng(seed);
  const auto ui = reference_ui();
  std::vector<Session> out;
  for (std::size_t s = 0; s < sessions; ++s) {
    SessionScript script(fmt::format("p{:02}-r{}", s / 5 + 1, s % 5 + 1));
    script.add_meta("participant", fmt::format("p{:02}", s / 5 + 1));
    script.add_meta("attempt", fmt::format("{}", s % 5 + 1));
    const auto gestures = 6 + static_cast<std::size_t>(rng.bits() % 7);  // 6..12
    double t = 0.0;
    for (std::size_t g = 0; g < gestures; ++g) {
      const double kind = rng.uniform();
      if (kind < 0.55) {
        // joystick drag: one of eight headings, short or long
        const double heading = static_cast<double>(rng.bits() % 8) * std::numbers::pi / 4.0 +
                               rng.uniform(-0.2, 0.2);
        const bool long_drag = rng.uniform() < 0.6;
        const double length = long_drag ? rng.uniform(140.0, 180.0) : rng.uniform(10.0, 40.0);
        const Point from = jitter_in(rng, ui.joystick, 0.15);
        const auto samples = static_cast<std::size_t>(8 + rng.bits() % 25);
        const double ms = rng.uniform(250.0, 900.0);
        script.drag(0, straight(from, heading, length, samples), t, t + ms);
        t += ms + rng.uniform(200.0, 900.0);
      } else {
        const auto& button = ui.skills[rng.bits() % ui.skills.size()];
        const double hold = rng.uniform(60.0, 140.0);
        script.tap(1, jitter_in(rng, button.shape, 0.25), t, hold);
        t += hold + rng.uniform(150.0, 700.0);
      }
    }
    out.push_back(script.finish());
  }
  return out;
}

}  // namespace touchscope::synth
