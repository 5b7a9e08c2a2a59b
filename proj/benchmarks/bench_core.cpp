#include <benchmark/benchmark.h>

#include "touchscope/clustering.hpp"
#include "touchscope/layout.hpp"
#include "touchscope/metrics.hpp"
#include "touchscope/synth.hpp"

using namespace touchscope;

namespace {

std::vector<Point> wander(std::size_t n) {
  synth::Rng rng(1);
  std::vector<Point> pts{{500, 500}};
  for (std::size_t i = 1; i < n; ++i) pts.push_back({pts.back().x + rng.normal(0, 8), pts.back().y + rng.normal(0, 8)});
  return pts;
}

void BM_Resample(benchmark::State& state) {
  const auto pts = wander(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resample(pts, 32));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Resample)->Arg(64)->Arg(1024)->Arg(16384);

void BM_KMeans(benchmark::State& state) {
  synth::Rng rng(2);
  std::vector<GestureVector> vectors;
  for (int i = 0; i < state.range(0); ++i) vectors.push_back(resample(wander(40 + rng.bits() % 200), 32, i));
  KMeansConfig cfg;
  cfg.distance = DistanceConfig::for_device(DeviceProfile::reference_phone());
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(vectors, 13, cfg));
}
BENCHMARK(BM_KMeans)->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ConfidenceRegion(benchmark::State& state) {
  synth::Rng rng(3);
  std::vector<Point> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back({rng.normal(260, 60), rng.normal(820, 60)});
  for (auto _ : state) benchmark::DoNotOptimize(confidence_region(pts, {260, 820}, 200, 0.95));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConfidenceRegion)->Arg(1228)->Arg(86174)->Unit(benchmark::kMicrosecond);

void BM_RadialLayout(benchmark::State& state) {
  const auto session = synth::novice_session(7);
  const auto regions = synth::skill_regions();
  for (auto _ : state) benchmark::DoNotOptimize(build_radial_layout(session, {}, regions));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(session.events.size()));
}
BENCHMARK(BM_RadialLayout)->Unit(benchmark::kMicrosecond);

void BM_Heatmap(benchmark::State& state) {
  const auto session = synth::novice_session(7);
  for (auto _ : state) benchmark::DoNotOptimize(heatmap(session, 16, 9));
}
BENCHMARK(BM_Heatmap);

}  // namespace

BENCHMARK_MAIN();
