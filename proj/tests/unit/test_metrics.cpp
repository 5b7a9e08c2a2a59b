#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "touchscope/error.hpp"
#include "touchscope/metrics.hpp"

using namespace touchscope;

namespace {

GestureVector vec(std::vector<Point> pts, int id = 0) {
  GestureVector v;
  v.gesture_id = id;
  v.pts = std::move(pts);
  v.source_length = path_length(v.pts);
  return v;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("path_length") {
  const std::vector<Point> legs{{0, 0}, {3, 0}, {3, 4}};
  CHECK(path_length(legs) == 7.0);
  const std::vector<Point> tap{{5, 5}};
  CHECK(path_length(tap) == 0.0);

  gen::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({rng.uniform(0, 1920), rng.uniform(0, 1080)});
    CHECK(std::abs(path_length(pts) - oracle::path_length(pts)) <= 1e-9 * oracle::path_length(pts));
  }
}

TEST_CASE("resample fixed examples") {
  SUBCASE("segment midpoint") {
    const std::vector<Point> seg{{0, 0}, {10, 0}};
    const auto v = resample(seg, 3);
    CHECK(v.pts == std::vector<Point>{{0, 0}, {5, 0}, {10, 0}});
    CHECK(v.source_length == 10.0);
  }
  SUBCASE("3-4-5 legs at unit spacing") {
    const std::vector<Point> legs{{0, 0}, {3, 0}, {3, 4}};
    const auto v = resample(legs, 8);
    // frozen from oracle::arc_walk(legs, 8)
    const std::vector<Point> expected{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {3, 2}, {3, 3}, {3, 4}};
    REQUIRE(v.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(v.pts[i].x == doctest::Approx(expected[i].x).epsilon(1e-12));
      CHECK(v.pts[i].y == doctest::Approx(expected[i].y).epsilon(1e-12));
    }
    CHECK(v.pts[3] == Point{3, 0});
    CHECK(oracle::arc_walk(legs, 8).size() == 8);
  }
  SUBCASE("evenly spaced collinear input is a fixed point") {
    std::vector<Point> line;
    for (int i = 0; i < 8; ++i) line.push_back({static_cast<double>(i), 2.0});
    CHECK(resample(line, 8).pts == line);
  }
  SUBCASE("tap yields N copies") {
    const std::vector<Point> tap{{42, 17}};
    const auto v = resample(tap, 5);
    CHECK(v.pts == std::vector<Point>(5, Point{42, 17}));
    CHECK(v.source_length == 0.0);
  }
  SUBCASE("N < 2 is rejected") {
    const std::vector<Point> seg{{0, 0}, {10, 0}};
    CHECK(code_of([&] { resample(seg, 1); }) == ErrorCode::InvalidSampleCount);
    CHECK(code_of([&] { resample(seg, 0); }) == ErrorCode::InvalidSampleCount);
  }
}

TEST_CASE("resample agrees with the arc-walk oracle") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pts = gen::polyline(rng);
    const std::size_t n = 2 + rng.bits() % 40;
    const auto got = resample(pts, n).pts;
    const auto want = oracle::arc_walk(pts, n);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(distance(got[i], want[i]) <= 1e-6);
    }
  }
}

TEST_CASE("euclid distance") {
  const auto v = vec({{0, 0}, {1, 0}});
  const auto w = vec({{0, 1}, {1, 1}});
  CHECK(euclid_distance(v, v) == 0.0);
  CHECK(euclid_distance(v, w) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(code_of([&] { euclid_distance(v, vec({{0, 0}, {1, 0}, {2, 0}})); }) == ErrorCode::DimensionMismatch);

  gen::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto a = gen::vector(rng, 16);
    const auto b = gen::vector(rng, 16);
    CHECK(euclid_distance(a, b) == euclid_distance(b, a));
  }
}

TEST_CASE("cosine similarity") {
  const auto v = vec({{1, 2}, {3, 4}});
  const auto neg = vec({{-1, -2}, {-3, -4}});
  CHECK(cosine_similarity(v, v) == 1.0);
  CHECK(cosine_similarity(v, neg) == -1.0);
  CHECK(cosine_similarity(vec({{1, 0}, {1, 0}}), vec({{0, 1}, {0, 1}})) == 0.0);
  CHECK(code_of([&] { cosine_similarity(v, vec({{0, 0}, {0, 0}})); }) == ErrorCode::ZeroNorm);

  SUBCASE("centering compares shape only") {
    const auto a = vec({{100, 100}, {110, 100}, {120, 100}});
    const auto b = vec({{500, 900}, {510, 900}, {520, 900}});
    CHECK(cosine_similarity(a, b, true) == doctest::Approx(1.0));
    const auto c = vec({{500, 900}, {490, 900}, {480, 900}});
    CHECK(cosine_similarity(a, c, true) == doctest::Approx(-1.0));
    // a motionless vector has no shape to compare
    CHECK(code_of([&] { cosine_similarity(a, vec({{5, 5}, {5, 5}, {5, 5}}), true); }) == ErrorCode::ZeroNorm);
  }
}

TEST_CASE("combined distance") {
  auto cfg = DistanceConfig::for_device(DeviceProfile::reference_phone());
  const auto v = vec({{1, 2}, {3, 4}});
  const auto neg = vec({{-1, -2}, {-3, -4}});
  const auto w = vec({{5, 1}, {2, 9}});

  for (double weight : {0.0, 0.3, 0.5, 1.0}) {
    cfg.weight_euclid = weight;
    CHECK(combined_distance(v, v, cfg) == 0.0);
  }
  cfg.weight_euclid = 1.0;
  CHECK(combined_distance(v, w, cfg) == euclid_distance(v, w) / cfg.euclid_normalizer);
  cfg.weight_euclid = 0.0;
  CHECK(combined_distance(v, neg, cfg) == 1.0);

  SUBCASE("weight 1 skips the cosine term, so zero vectors are fine") {
    cfg.weight_euclid = 1.0;
    CHECK_NOTHROW(combined_distance(v, vec({{0, 0}, {0, 0}}), cfg));
  }
  SUBCASE("config validation") {
    cfg.weight_euclid = 1.5;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidArgument);
    cfg.weight_euclid = 0.5;
    cfg.n_samples = 1;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidSampleCount);
  }
  SUBCASE("symmetric and non-negative") {
    gen::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
      cfg.weight_euclid = rng.uniform();
      const auto a = gen::vector(rng, 8);
      const auto b = gen::vector(rng, 8);
      const double ab = combined_distance(a, b, cfg);
      CHECK(ab >= 0.0);
      CHECK(ab == doctest::Approx(combined_distance(b, a, cfg)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gesture vector record round trip") {
  gen::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto v = gen::vector(rng, 2 + rng.bits() % 10, static_cast<int>(i));
    CHECK(parse_vector_record(format_vector_record(v)) == v);
  }
  CHECK(format_vector_record(vec({{1, 2}, {3.5, 4}}, 7)) == "7,2,1,2,3.5,4");
  CHECK(code_of([] { parse_vector_record("1,3,0,0"); }) == ErrorCode::InvalidArgument);
}
