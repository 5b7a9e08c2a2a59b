#include <csignal>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "touchscope/api.hpp"
#include "touchscope/error.hpp"
#include "touchscope/http_server.hpp"

namespace {

touchscope::HttpServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace touchscope;

  CLI::App app{"touchscope: multi-touch interaction log analytics"};
  app.require_subcommand(1);

  cli::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse and segment logs; print session summaries");
  ingest_cmd->add_option("logs", ingest.paths, "Log files or directories of *.log")->required();

  cli::VerifyUiOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-ui", "Fit confidence regions per UI region");
  verify_cmd->add_option("logs", verify.paths, "Log files or directories")->required();
  verify_cmd->add_option("--regions", verify.regions_path, "Regions file: label,ring,cx,cy,r")->required();
  verify_cmd->add_option("--confidence", verify.confidences, "Confidence coefficients")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--kinds", verify.kinds, "Dot kinds: touch, move")->delimiter(',')->capture_default_str();
  verify_cmd->add_option("--out", verify.out_dir, "Directory for verify_ui.csv and verify_ui.svg");

  cli::ClusterOptions cluster;
  double min_length = -1.0;
  auto* cluster_cmd = app.add_subcommand("cluster", "K-Means over resampled movement gestures");
  cluster_cmd->add_option("logs", cluster.paths, "Log files or directories")->required();
  cluster_cmd->add_option("--k", cluster.k, "Cluster count")->capture_default_str();
  cluster_cmd->add_option("--n-samples", cluster.n_samples, "Samples per gesture")->capture_default_str();
  cluster_cmd->add_option("--weight-euclid", cluster.weight_euclid, "Weight of the Euclidean term")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cluster_cmd->add_option("--seed", cluster.seed, "Random seed")->capture_default_str();
  cluster_cmd->add_option("--min-length-px", min_length,
                          "Minimum path length; default 2x the joystick radius at c=0.95, else 120");
  cluster_cmd->add_option("--regions", cluster.regions_path, "Regions file used to size --min-length-px");
  cluster_cmd->add_option("--sweep-k", cluster.sweep_k, "Print inertia for k = 1..N instead");
  cluster_cmd->add_option("--max-iterations", cluster.max_iterations)->capture_default_str();
  cluster_cmd->add_flag("--center-cosine", cluster.center_cosine, "Center vectors before the cosine term");
  cluster_cmd->add_option("--out", cluster.out_dir, "Directory for cluster_report.txt and clusters.svg");

  cli::LayoutOptions layout;
  auto* layout_cmd = app.add_subcommand("layout", "Render the radial layout of one session as SVG");
  layout_cmd->add_option("log", layout.log_path, "Log file")->required();
  layout_cmd->add_option("--out", layout.out_dir, "Output directory")->required();
  layout_cmd->add_option("--regions", layout.regions_path, "Semantic regions file");
  layout_cmd->add_flag("--json", layout.write_json, "Also write the layout as JSON");
  layout_cmd->add_option("--max-arc-height", layout.layout.max_arc_height)->capture_default_str();
  layout_cmd->add_flag("--semantic-moves", layout.layout.semantic_include_moves,
                       "Map Move events inside regions to semantic rings too");

  ServiceConfig service = config_from_env();
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--store", service.store_root, "Session store directory")->capture_default_str();
  serve_cmd->add_option("--host", service.bind_host)->capture_default_str();
  serve_cmd->add_option("--port", service.port)->capture_default_str();
  serve_cmd->add_option("--n-samples", service.default_n_samples)->capture_default_str();

  cli::FixtureOptions fixtures;
  auto* fixtures_cmd = app.add_subcommand("gen-fixtures", "Write the scripted synthetic fixture corpus");
  fixtures_cmd->add_option("--out", fixtures.out_dir, "Output directory")->required();
  fixtures_cmd->add_option("--seed", fixtures.seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*ingest_cmd) return cli::cmd_ingest(ingest, std::cout, std::cerr);
  if (*verify_cmd) return cli::cmd_verify_ui(verify, std::cout, std::cerr);
  if (*cluster_cmd) {
    if (min_length >= 0.0) cluster.min_length_px = min_length;
    return cli::cmd_cluster(cluster, std::cout, std::cerr);
  }
  if (*layout_cmd) return cli::cmd_layout(layout, std::cout, std::cerr);
  if (*fixtures_cmd) return cli::cmd_gen_fixtures(fixtures, std::cout, std::cerr);
  if (*serve_cmd) {
    try {
      SessionStore store(service.store_root);
      Api api(store, service);
      HttpServer server(api);
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      const bool ok = server.listen(service.bind_host, service.port, [&](int port) {
        std::cerr << fmt::format("serving {} on http://{}:{}\n", service.store_root, service.bind_host, port);
      });
      g_server = nullptr;
      if (!ok) {
        std::cerr << fmt::format("error: cannot bind {}:{}\n", service.bind_host, service.port);
        return 1;
      }
      return 0;
    } catch (const Error& e) {
      std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
