#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "touchscope/clustering.hpp"
#include "touchscope/error.hpp"
#include "touchscope/metrics.hpp"
#include "touchscope/report.hpp"
#include "touchscope/serialize.hpp"
#include "touchscope/svg.hpp"
#include "touchscope/synth.hpp"

namespace fs = std::filesystem;

namespace touchscope::cli {
namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot open {}", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, std::string_view text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write {}", p.string()));
  out << text;
}

std::vector<fs::path> expand(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".log") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(p);
    }
  }
  return files;
}

void report_error(std::ostream& err, const Error& e) { err << "error: " << e.name() << ": " << e.what() << '\n'; }

double joystick_min_length(const std::vector<Session>& sessions,
                           const std::vector<SemanticRegion>& regions) {
  for (const auto& r : regions) {
    if (r.label != "joystick") continue;
    const auto dots = collect_dots(sessions, DotKind::Touch);
    try {
      return 2.0 * confidence_region(dots, r.shape.center, r.shape.radius, 0.95).new_radius;
    } catch (const Error&) {
      break;
    }
  }
  return kDefaultMinLengthPx;
}

}  // namespace

std::vector<Session> load_sessions(const std::vector<std::string>& paths) {
  std::vector<Session> sessions;
  for (const auto& file : expand(paths)) {
    try {
      sessions.push_back(load_session(read_text(file), file.stem().string()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", file.string(), e.what()));
    }
  }
  return sessions;
}

std::vector<SemanticRegion> load_regions(const std::string& path) {
  return parse_regions(read_text(path));
}

int cmd_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err) {
  int status = 0;
  const auto files = expand(opts.paths);
  if (files.empty()) {
    err << "error: no log files given\n";
    return 2;
  }
  for (const auto& file : files) {
    try {
      const auto s = load_session(read_text(file), file.stem().string());
      std::size_t forced = 0;
      for (const auto& g : s.gestures) forced += g.force_closed ? 1 : 0;
      out << fmt::format("{}: {} events, {} gesture{}, {} orphan{}, {} force-closed, {} rejected, "
                         "duration {} ms\n",
                         s.session_id, s.events.size(), s.gestures.size(),
                         s.gestures.size() == 1 ? "" : "s", s.report.orphan_events.size(),
                         s.report.orphan_events.size() == 1 ? "" : "s", forced,
                         s.report.rejected.size(), s.end_t() - s.start_t());
      if (!s.report.clean()) {
        std::istringstream lines(format_validation_report(s));
        for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
      }
    } catch (const Error& e) {
      err << file.string() << ": ";
      report_error(err, e);
      status = 1;
    }
  }
  return status;
}

int cmd_verify_ui(const VerifyUiOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto sessions = load_sessions(opts.paths);
    if (sessions.empty()) {
      err << "error: no log files given\n";
      return 2;
    }
    const auto regions = load_regions(opts.regions_path);
    std::vector<DotKind> kinds;
    for (const auto& k : opts.kinds) {
      if (k == "touch") kinds.push_back(DotKind::Touch);
      else if (k == "move") kinds.push_back(DotKind::Move);
      else throw Error(ErrorCode::InvalidArgument, fmt::format("unknown dot kind '{}'", k));
    }
    const auto& device = sessions.front().device;
    const auto table = verify_ui(sessions, regions, opts.confidences, kinds, device);
    const auto csv = format_report_table(table);
    out << csv;
    if (!opts.out_dir.empty()) {
      write_text(fs::path(opts.out_dir) / "verify_ui.csv", csv);
      std::vector<Point> dots;
      for (DotKind k : kinds) {
        const auto d = collect_dots(sessions, k);
        dots.insert(dots.end(), d.begin(), d.end());
      }
      write_text(fs::path(opts.out_dir) / "verify_ui.svg",
                 render_region_overlay_svg(device, dots, table.overlays));
    }
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

int cmd_cluster(const ClusterOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto sessions = load_sessions(opts.paths);
    if (sessions.empty()) {
      err << "error: no log files given\n";
      return 2;
    }
    std::vector<SemanticRegion> regions;
    if (!opts.regions_path.empty()) regions = load_regions(opts.regions_path);
    const double min_length = opts.min_length_px.value_or(joystick_min_length(sessions, regions));

    const auto inputs = collect_gesture_vectors(sessions, opts.n_samples, min_length);
    std::vector<GestureVector> vectors;
    for (const auto& l : inputs) vectors.push_back(l.vector);

    KMeansConfig cfg;
    cfg.seed = opts.seed;
    cfg.max_iterations = opts.max_iterations;
    cfg.distance = DistanceConfig::for_device(sessions.front().device, opts.weight_euclid, opts.n_samples);
    cfg.distance.center_for_cosine = opts.center_cosine;

    if (opts.sweep_k > 0) {
      out << "k,inertia,iterations\n";
      for (std::size_t k = 1; k <= std::min(opts.sweep_k, vectors.size()); ++k) {
        const auto r = kmeans(vectors, k, cfg);
        out << fmt::format("{},{:.6f},{}\n", k, r.inertia, r.iterations);
      }
      return 0;
    }

    const auto result = kmeans(vectors, opts.k, cfg);
    const auto report = format_cluster_report(
        result, inputs, {opts.k, opts.n_samples, opts.weight_euclid, min_length, opts.seed}, cfg.distance);
    out << report;
    if (!opts.out_dir.empty()) {
      write_text(fs::path(opts.out_dir) / "cluster_report.txt", report);
      write_text(fs::path(opts.out_dir) / "clusters.svg",
                 render_cluster_svg(sessions.front().device, result));
    }
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

int cmd_layout(const LayoutOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto sessions = load_sessions({opts.log_path});
    if (sessions.size() != 1) {
      throw Error(ErrorCode::InvalidArgument, "layout takes exactly one log file");
    }
    const auto& session = sessions.front();
    std::vector<SemanticRegion> regions;
    if (!opts.regions_path.empty()) regions = load_regions(opts.regions_path);
    const auto layout = build_radial_layout(session, opts.layout, regions);
    const auto svg = render_radial_svg(layout, session, {opts.svg_size, true});
    if (!opts.out_dir.empty()) {
      const fs::path dir(opts.out_dir);
      write_text(dir / (session.session_id + ".layout.svg"), svg);
      if (opts.write_json) {
        write_text(dir / (session.session_id + ".layout.json"), to_json(layout).dump(1) + "\n");
      }
    }

    std::size_t max_arc = 0;
    for (std::size_t i = 1; i < layout.arcs.size(); ++i) {
      if (layout.arcs[i].height > layout.arcs[max_arc].height) max_arc = i;
    }
    out << fmt::format("{}: period {:.0f}-{:.0f} ms, {} dots, {} arcs, {} semantic dots\n",
                       session.session_id, layout.start_t, layout.end_t, layout.dots.size(),
                       layout.arcs.size(), layout.semantic_dots.size());
    if (!layout.arcs.empty()) {
      const auto& a = layout.arcs[max_arc];
      out << fmt::format("longest gesture {}: {:.4f} -> {:.4f} rad\n", a.gesture_id, a.start_angle,
                         a.end_angle);
    }
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  }
}

int cmd_gen_fixtures(const FixtureOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const fs::path root(opts.out_dir);
    nlohmann::json manifest;
    manifest["seed"] = opts.seed;

    const auto novice = synth::novice_session(opts.seed);
    write_text(root / "novice.log", serialize_log(novice));
    const auto expert = synth::expert_session(opts.seed + 1);
    write_text(root / "expert.log", serialize_log(expert));
    write_text(root / "skills.regions", format_regions(synth::skill_regions()));
    write_text(root / "ui.regions", format_regions(synth::verification_regions()));

    auto summarize = [](const Session& s) {
      std::size_t taps = 0;
      std::vector<int> movements;
      for (const auto& g : s.gestures) {
        if (g.points.size() > 2) movements.push_back(g.gesture_id);
        else ++taps;
      }
      return nlohmann::json{{"events", s.events.size()},
                            {"gestures", s.gestures.size()},
                            {"movement_gestures", movements},
                            {"taps", taps}};
    };
    manifest["novice"] = summarize(novice);
    manifest["expert"] = summarize(expert);

    const auto motif = synth::two_motif_fixture(opts.seed + 2, 4, 10);
    for (const auto& s : motif.sessions) write_text(root / "motif" / (s.session_id + ".log"), serialize_log(s));
    manifest["motif"] = {{"sessions", motif.sessions.size()}, {"labels", motif.labels}};

    const auto study = synth::study_corpus(opts.seed + 3);
    std::size_t study_gestures = 0;
    for (const auto& s : study) {
      write_text(root / "study" / (s.session_id + ".log"), serialize_log(s));
      study_gestures += s.gestures.size();
    }
    manifest["study"] = {{"sessions", study.size()}, {"gestures", study_gestures}};

    write_text(root / "manifest.json", manifest.dump(2) + "\n");
    out << fmt::format("wrote fixtures to {} (study: {} sessions, {} gestures)\n", root.string(),
                       study.size(), study_gestures);
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace touchscope::cli
