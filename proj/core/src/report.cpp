#include "touchscope/report.hpp"

#include <limits>

#include <fmt/format.h>

#include "touchscope/error.hpp"

namespace touchscope {

std::string_view dot_kind_name(DotKind k) noexcept {
  return k == DotKind::Touch ? "touch" : "move";
}

std::vector<Point> collect_dots(const std::vector<Session>& sessions, DotKind kind) {
  const Action want = kind == DotKind::Touch ? Action::Down : Action::Move;
  std::vector<Point> out;
  for (const auto& s : sessions) {
    for (const auto& e : s.events) {
      if (e.action == want) out.push_back(e.position());
    }
  }
  return out;
}

ReportTable verify_ui(const std::vector<Session>& sessions,
                      const std::vector<SemanticRegion>& regions,
                      const std::vector<double>& confidences, const std::vector<DotKind>& kinds,
                      const DeviceProfile& device) {
  ReportTable table;
  for (DotKind kind : kinds) {
    const auto dots = collect_dots(sessions, kind);
    for (const auto& reg : regions) {
      for (double c : confidences) {
        ReportRow row;
        row.region = reg.label;
        row.kind = kind;
        row.confidence = c;
        const auto edge = reg.shape.center.x > device.width_px / 2.0 ? HorizontalEdge::Right
                                                                     : HorizontalEdge::Left;
        try {
          auto fit = confidence_region(dots, reg.shape.center, reg.shape.radius, c);
          row.metrics = region_metrics(fit, device, edge);
          table.overlays.push_back({fmt::format("{}-{}", reg.label, dot_kind_name(kind)), fit});
          row.fit = std::move(fit);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::InvalidConfidence) throw;
          row.flag = std::string(e.name());
          row.metrics.edge = edge;
        }
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

std::string format_report_table(const ReportTable& table) {
  std::string out =
      "region,kind,confidence,original_radius_px,sampling_number,original_center_x,"
      "original_center_y,original_number,new_center_x,new_center_y,new_radius_px,new_number,"
      "edge,distance_to_edge_mm,distance_to_bottom_mm,diameter_mm,flag\n";
  for (const auto& r : table.rows) {
    const char* edge = r.metrics.edge == HorizontalEdge::Left ? "left" : "right";
    if (!r.fit) {
      out += fmt::format("{},{},{:.2f},,,,,0,,,,0,{},,,,{}\n", r.region, dot_kind_name(r.kind),
                         r.confidence, edge, r.flag);
      continue;
    }
    const auto& f = *r.fit;
    out += fmt::format(
        "{},{},{:.2f},{:.3f},{},{:.3f},{:.3f},{},{:.3f},{:.3f},{:.3f},{},{},{:.2f},{:.2f},{:.2f},{}\n",
        r.region, dot_kind_name(r.kind), r.confidence, f.selection_radius, f.sampling_count,
        f.original_center.x, f.original_center.y, f.original_count, f.new_center.x,
        f.new_center.y, f.new_radius, f.new_count, edge, r.metrics.distance_to_edge_mm,
        r.metrics.distance_to_bottom_mm, r.metrics.diameter_mm, r.flag);
  }
  return out;
}

std::vector<LabeledVector> collect_gesture_vectors(const std::vector<Session>& sessions,
                                                   std::size_t n_samples, double min_length_px) {
  std::vector<LabeledVector> out;
  for (const auto& s : sessions) {
    for (const auto& g : s.gestures) {
      auto v = resample(g, n_samples);
      if (v.source_length < min_length_px) continue;
      out.push_back({s.session_id, std::move(v)});
    }
  }
  return out;
}

std::string format_cluster_report(const ClusterResult& result,
                                  const std::vector<LabeledVector>& inputs,
                                  const ClusterReportParams& params, const DistanceConfig& config) {
  std::string out;
  out += fmt::format("gestures: {}\n", inputs.size());
  out += fmt::format("k: {}\nn_samples: {}\nweight_euclid: {:.3f}\nmin_length_px: {:.3f}\nseed: {}\n",
                     params.k, params.n_samples, params.weight_euclid, params.min_length_px,
                     params.seed);
  out += fmt::format("iterations: {}\ninertia: {:.6f}\n", result.iterations, result.inertia);
  out += "cluster,size,exemplar,exemplar_distance,mean_length_px\n";
  const auto sizes = result.cluster_sizes();
  for (std::size_t c = 0; c < result.k; ++c) {
    std::size_t best = inputs.size();
    double best_d = std::numeric_limits<double>::infinity();
    double length_sum = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (result.assignment[i] != c) continue;
      length_sum += inputs[i].vector.source_length;
      const double d = combined_distance(inputs[i].vector, result.centroids[c], config);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == inputs.size()) {
      out += fmt::format("{},0,-,-,-\n", c);
      continue;
    }
    out += fmt::format("{},{},{}#{},{:.6f},{:.3f}\n", c, sizes[c], inputs[best].session_id,
                       inputs[best].vector.gesture_id, best_d,
                       length_sum / static_cast<double>(sizes[c]));
  }
  return out;
}

}  // namespace touchscope
