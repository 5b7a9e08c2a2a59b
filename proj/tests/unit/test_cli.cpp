#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "paths.hpp"

using namespace touchscope;
using namespace touchscope::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename Opts>
Run run(int (*cmd)(const Opts&, std::ostream&, std::ostream&), const Opts& opts) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cmd(opts, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::string kHeader = "#device,1920,1080,110.7,62.3\n";

}  // namespace

TEST_CASE("ingest") {
  const auto dir = testdata::scratch("cli-ingest");
  SUBCASE("minimal log") {
    const auto p = write(dir, "min.log", kHeader + "0,0,D,0,0\n10,0,M,5,0\n20,0,U,10,0\n");
    const auto r = run(cmd_ingest, IngestOptions{{p.string()}});
    CHECK(r.code == 0);
    CHECK(r.out.find("min: 3 events, 1 gesture,") == 0);
  }
  SUBCASE("study directory") {
    const auto r = run(cmd_ingest, IngestOptions{{(testdata::fixtures() / "study").string()}});
    CHECK(r.code == 0);
    const auto manifest = nlohmann::json::parse(testdata::read(testdata::fixtures() / "manifest.json"));
    CHECK(lines(r.out) == manifest["study"]["sessions"].get<std::size_t>());
  }
  SUBCASE("corrupt file") {
    const auto p = write(dir, "bad.log", kHeader + "0,0,D,0,0\nxx\nyy\n30,0,U,1,1\n");
    const auto r = run(cmd_ingest, IngestOptions{{p.string()}});
    CHECK(r.code != 0);
    CHECK(r.err.find("CorruptLog") != std::string::npos);
    CHECK(r.err.find("3") != std::string::npos);
  }
  SUBCASE("no files") { CHECK(run(cmd_ingest, IngestOptions{}).code == 2); }
}

TEST_CASE("verify-ui") {
  const auto dir = testdata::scratch("cli-verify");
  VerifyUiOptions opts;
  opts.paths = {(testdata::fixtures() / "study").string()};
  opts.regions_path = (testdata::fixtures() / "ui.regions").string();
  opts.out_dir = dir.string();
  const auto r = run(cmd_verify_ui, opts);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("region,kind,confidence,", 0) == 0);
  CHECK(lines(r.out) == 1 + 6 * 2);
  CHECK(std::filesystem::exists(dir / "verify_ui.csv"));
  CHECK(std::filesystem::exists(dir / "verify_ui.svg"));
  CHECK(run(cmd_verify_ui, opts).out == r.out);

  opts.confidences = {1.5};
  CHECK(run(cmd_verify_ui, opts).code != 0);
}

TEST_CASE("cluster") {
  const auto motif = (testdata::fixtures() / "motif").string();
  ClusterOptions opts;
  opts.paths = {motif};
  opts.k = 2;
  opts.min_length_px = 0.0;

  const auto r = run(cmd_cluster, opts);
  REQUIRE(r.code == 0);
  CHECK(run(cmd_cluster, opts).out == r.out);

  // cluster sizes agree with the generator's label counts
  const auto manifest = nlohmann::json::parse(testdata::read(testdata::fixtures() / "manifest.json"));
  const auto labels = manifest["motif"]["labels"].get<std::vector<int>>();
  const auto ones = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  std::vector<std::size_t> expected{labels.size() - ones, ones};
  std::sort(expected.begin(), expected.end());
  std::vector<std::size_t> sizes;
  std::istringstream in(r.out);
  std::string line;
  bool table = false;
  while (std::getline(in, line)) {
    if (table) sizes.push_back(std::stoul(line.substr(line.find(',') + 1)));
    if (line.rfind("cluster,", 0) == 0) table = true;
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == expected);

  opts.k = 1;
  const auto one = run(cmd_cluster, opts);
  CHECK(one.out.find("0," + std::to_string(labels.size()) + ",") != std::string::npos);

  opts.k = labels.size() + 1;
  CHECK(run(cmd_cluster, opts).code != 0);

  opts.k = 2;
  opts.sweep_k = 4;
  CHECK(lines(run(cmd_cluster, opts).out) == 5);
}

TEST_CASE("layout") {
  const auto dir = testdata::scratch("cli-layout");
  SUBCASE("full-period gesture") {
    const auto p = write(dir, "full.log", kHeader + "0,0,D,0,0\n500,0,M,5,0\n1000,0,U,10,0\n");
    LayoutOptions opts;
    opts.log_path = p.string();
    opts.out_dir = dir.string();
    opts.write_json = true;
    const auto r = run(cmd_layout, opts);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("longest gesture 0: 0.0000 -> 6.2832 rad") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "full.layout.svg"));
    CHECK(std::filesystem::exists(dir / "full.layout.json"));
  }
  SUBCASE("degenerate period") {
    const auto p = write(dir, "flat.log", kHeader + "0,0,D,0,0\n0,0,U,0,0\n");
    LayoutOptions opts;
    opts.log_path = p.string();
    const auto r = run(cmd_layout, opts);
    CHECK(r.code != 0);
    CHECK(r.err.find("DegeneratePeriod") != std::string::npos);
  }
}

TEST_CASE("committed fixtures match the generator") {
  const auto dir = testdata::scratch("cli-fixtures");
  const auto r = run(cmd_gen_fixtures, FixtureOptions{dir.string(), 7});
  REQUIRE(r.code == 0);
  for (const char* name : {"novice.log", "expert.log", "manifest.json", "ui.regions", "skills.regions",
                           "motif/motif-02.log", "study/p07-r1.log"}) {
    CAPTURE(name);
    CHECK(testdata::read(dir / name) == testdata::read(testdata::fixtures() / name));
  }
}
