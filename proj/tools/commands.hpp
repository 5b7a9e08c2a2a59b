#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "touchscope/ingest.hpp"
#include "touchscope/layout.hpp"
#include "touchscope/regions.hpp"

namespace touchscope::cli {

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code.

/// Expands directories to their *.log files (sorted) and loads each as a
/// segmented session named after the file stem.
std::vector<Session> load_sessions(const std::vector<std::string>& paths);
std::vector<SemanticRegion> load_regions(const std::string& path);

struct IngestOptions {
  std::vector<std::string> paths;
};
int cmd_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyUiOptions {
  std::vector<std::string> paths;
  std::string regions_path;
  std::vector<double> confidences{0.95, 0.99};
  std::vector<std::string> kinds{"touch"};
  std::string out_dir;
};
int cmd_verify_ui(const VerifyUiOptions& opts, std::ostream& out, std::ostream& err);

struct ClusterOptions {
  std::vector<std::string> paths;
  std::size_t k = 2;
  std::size_t n_samples = 32;
  double weight_euclid = 0.5;
  std::uint64_t seed = 0;
  std::optional<double> min_length_px;
  std::string regions_path;
  std::size_t sweep_k = 0;
  std::size_t max_iterations = 100;
  bool center_cosine = false;
  std::string out_dir;
};
int cmd_cluster(const ClusterOptions& opts, std::ostream& out, std::ostream& err);

/// Fallback filter when no joystick region is available to size it from.
inline constexpr double kDefaultMinLengthPx = 120.0;

/// Writes <out_dir>/<session>.layout.svg, plus <session>.layout.json when
/// `write_json` is set.
struct LayoutOptions {
  std::string log_path;
  std::string out_dir;
  std::string regions_path;
  bool write_json = false;
  RadialLayoutConfig layout;
  double svg_size = 800.0;
};
int cmd_layout(const LayoutOptions& opts, std::ostream& out, std::ostream& err);

struct FixtureOptions {
  std::string out_dir;
  std::uint64_t seed = 7;
};
/// Writes the scripted fixture corpus plus its manifest.json.
int cmd_gen_fixtures(const FixtureOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace touchscope::cli
