#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "touchscope/ingest.hpp"
#include "touchscope/regions.hpp"

// Scripted synthetic sessions on the reference phone. The real participant
// logs are not redistributable, so fixtures and demos are generated from
// these scripts.

namespace touchscope::synth {

/// Portable random source: mt19937_64 bits mapped to doubles by hand so the
/// sequence does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal(double mean, double stddev);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct GameUi {
  Circle joystick;
  std::vector<SemanticRegion> skills;  // Normal Attack first, then skills 1-4 clockwise
};

/// Joystick on the lower left, Normal Attack plus four skills on the lower right.
GameUi reference_ui();

/// Skill buttons as semantic regions on rings 0-4.
std::vector<SemanticRegion> skill_regions();
/// Joystick plus skill buttons, used for UI verification.
std::vector<SemanticRegion> verification_regions();

/// Records events in session order and serializes them sorted by time.
class SessionScript {
 public:
  explicit SessionScript(std::string session_id, DeviceProfile device = DeviceProfile::reference_phone());

  void tap(int pointer, Point at, double t, double hold_ms);
  void drag(int pointer, const std::vector<Point>& path, double t0, double t1);
  void add_meta(std::string key, std::string value);

  Session finish() const;

 private:
  struct Stamped {
    TouchEvent event;
    std::size_t seq;
  };
  std::string session_id_;
  DeviceProfile device_;
  std::vector<Stamped> events_;
  std::map<std::string, std::string> meta_;
};

/// Wandering thumb path inside the joystick circle, one sample per `step_ms`.
std::vector<Point> joystick_wander(Rng& rng, const Circle& joystick, double duration_ms,
                                   double step_ms);

/// Novice replay: three movement gestures, the last lasting 107 s until the
/// session ends at 120 s, and skill buttons mashed in clockwise order.
Session novice_session(std::uint64_t seed);

/// Expert replay: repeated short move, then skill combo cycles.
Session expert_session(std::uint64_t seed);

struct MotifFixture {
  std::vector<Session> sessions;
  std::vector<int> labels;  // per gesture in session order: 0 = left drag, 1 = right drag
};

/// Straight joystick drags toward the left or the right with jitter.
MotifFixture two_motif_fixture(std::uint64_t seed, std::size_t sessions, std::size_t per_session);

/// Study-scale corpus: 45 sessions of joystick drags and skill taps.
std::vector<Session> study_corpus(std::uint64_t seed, std::size_t sessions = 45);

}  // namespace touchscope::synth
