#include <doctest.h>

#include <atomic>
#include <future>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "paths.hpp"
#include "touchscope/api.hpp"
#include "touchscope/http_server.hpp"
#include "touchscope/layout.hpp"
#include "touchscope/report.hpp"
#include "touchscope/serialize.hpp"
#include "touchscope/store.hpp"

using namespace touchscope;

namespace {

const std::string kHeader = "#device,1920,1080,110.7,62.3\n";

struct Fixture {
  std::filesystem::path root;
  SessionStore store;
  Api api;
  explicit Fixture(const std::string& name) : root(testdata::scratch(name)), store(root), api(store, ServiceConfig{}) {}

  ApiResponse call(std::string method, std::string path, std::string body = {},
                   std::map<std::string, std::string> query = {}) {
    return api.handle({std::move(method), std::move(path), std::move(query), std::move(body)});
  }
};

Json body_of(const ApiResponse& r) { return Json::parse(r.body); }

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("query string decoding") {
  const auto q = parse_query_string("a=1&b=two%20words&c=x+y&flag");
  CHECK(q.at("a") == "1");
  CHECK(q.at("b") == "two words");
  CHECK(q.at("c") == "x y");
  CHECK(q.at("flag").empty());
}

TEST_CASE("upload, summary and layout match the library") {
  Fixture f("svc-layout");
  const auto log = testdata::read(testdata::fixtures() / "novice.log");
  const auto up = f.call("POST", "/sessions", log, {{"id", "novice"}});
  REQUIRE(up.status == 201);
  const auto summary = body_of(up);
  CHECK(summary["session_id"] == "novice");
  CHECK(summary["log_hash"] == sha256_hex(log));

  const auto direct = load_session(log, "novice");
  CHECK(summary == [&] {
    auto j = session_summary(direct);
    j["log_hash"] = sha256_hex(log);
    return j;
  }());

  const auto layout = f.call("GET", "/sessions/novice/layout");
  REQUIRE(layout.status == 200);
  CHECK(body_of(layout)["dots"].size() == direct.events.size());
  CHECK(layout.body == to_json(build_radial_layout(direct)).dump());
  CHECK(f.call("GET", "/sessions/novice/layout").body == layout.body);

  RadialLayoutConfig cfg;
  cfg.max_arc_height = 0.1;
  cfg.rings.touch = 0.25;
  const auto tuned = f.call("GET", "/sessions/novice/layout", {}, {{"max_arc_height", "0.1"}, {"touch", "0.25"}});
  CHECK(tuned.body == to_json(build_radial_layout(direct, cfg)).dump());

  CHECK(body_of(f.call("GET", "/sessions"))["sessions"] == Json::array({"novice"}));
  CHECK(f.call("GET", "/health").status == 200);
}

TEST_CASE("changing a log invalidates its cache") {
  Fixture f("svc-cache");
  const std::string a = kHeader + "0,0,D,10,10\n100,0,U,20,20\n";
  const std::string b = kHeader + "0,0,D,10,10\n50,0,M,15,15\n200,0,U,20,20\n";
  REQUIRE(f.call("POST", "/sessions", a, {{"id", "s"}}).status == 201);
  const auto first = f.call("GET", "/sessions/s/layout");
  CHECK(f.store.cache_entries() == 1);
  REQUIRE(f.call("POST", "/sessions", b, {{"id", "s"}}).status == 201);
  CHECK(f.store.cache_entries() == 0);
  const auto second = f.call("GET", "/sessions/s/layout");
  CHECK(second.body != first.body);
  CHECK(second.body == to_json(build_radial_layout(load_session(b, "s"))).dump());

  SUBCASE("the store survives a restart") {
    SessionStore reopened(f.root);
    CHECK(reopened.list() == std::vector<std::string>{"s"});
    CHECK(reopened.get("s")->log_hash == sha256_hex(b));
  }
}

TEST_CASE("query, regions, heatmap") {
  Fixture f("svc-misc");
  const auto log = testdata::read(testdata::fixtures() / "expert.log");
  REQUIRE(f.call("POST", "/sessions", log, {{"id", "expert"}}).status == 201);
  const auto direct = load_session(log, "expert");

  const auto q = f.call("POST", "/sessions/expert/query",
                        R"({"area":{"type":"circle","cx":260,"cy":820,"r":200},"mode":"start_in"})");
  REQUIRE(q.status == 200);
  auto expected = to_json(spatial_query(direct, Circle{{260, 820}, 200}, QueryMode::StartIn));
  expected["mode"] = "start_in";
  CHECK(body_of(q) == expected);

  const auto regions_text = testdata::read(testdata::fixtures() / "skills.regions");
  const auto regions = parse_regions(regions_text);
  const auto posted = f.call("POST", "/sessions/expert/regions", Json{{"regions", to_json(regions)}}.dump());
  REQUIRE(posted.status == 200);
  CHECK(body_of(posted)["semantic_dots"] == to_json(assign_semantic_axes(direct, regions)));
  CHECK(body_of(f.call("GET", "/sessions/expert/regions"))["regions"] == to_json(regions));
  CHECK(f.call("GET", "/sessions/expert/layout").body == to_json(build_radial_layout(direct, {}, regions)).dump());

  const auto h = f.call("GET", "/sessions/expert/heatmap", {}, {{"cols", "8"}, {"rows", "4"}, {"filter", "touch"}});
  CHECK(h.body == to_json(heatmap(direct, 8, 4, {Action::Down})).dump());
}

TEST_CASE("confidence and cluster endpoints") {
  Fixture f("svc-fit");
  const auto log = testdata::read(testdata::fixtures() / "novice.log");
  REQUIRE(f.call("POST", "/sessions", log, {{"id", "n"}}).status == 201);

  synth::Rng rng(1228);
  const auto pts = gen::gaussian_blob(rng, {260, 820}, 50, 1228);
  Json points = Json::array();
  for (const auto& p : pts) points.push_back({p.x, p.y});
  const auto r = f.call("POST", "/sessions/n/confidence",
                        Json{{"selection", {{"cx", 260}, {"cy", 820}, {"r", 2000}}}, {"c", 0.95}, {"points", points}}.dump());
  REQUIRE(r.status == 200);
  CHECK(body_of(r)["region"]["original_count"] == 1228);
  CHECK(body_of(r)["region"]["new_count"] == 1166);
  CHECK(body_of(r)["region"] == to_json(confidence_region(pts, {260, 820}, 2000, 0.95)));

  const std::string req = R"({"k":2,"n_samples":16,"seed":9,"min_length_px":50})";
  const auto c1 = f.call("POST", "/sessions/n/cluster", req);
  REQUIRE(c1.status == 200);
  Fixture g("svc-fit-2");
  REQUIRE(g.call("POST", "/sessions", log, {{"id", "n"}}).status == 201);
  CHECK(g.call("POST", "/sessions/n/cluster", req).body == c1.body);
  CHECK(f.call("POST", "/sessions/n/cluster", req).body == c1.body);
}

TEST_CASE("error mapping") {
  Fixture f("svc-errors");
  auto err = [](const ApiResponse& r) { return body_of(r)["error"].get<std::string>(); };

  CHECK(f.call("GET", "/sessions/missing").status == 404);
  CHECK(err(f.call("GET", "/sessions/missing/layout")) == "SessionNotFound");
  CHECK(f.call("GET", "/nowhere").status == 404);
  CHECK(err(f.call("POST", "/sessions", "")) == "EmptyLog");
  CHECK(err(f.call("POST", "/sessions", kHeader + "0,0,D,1,1\n", {{"id", "../etc"}})) == "InvalidArgument");

  REQUIRE(f.call("POST", "/sessions", kHeader + "0,0,D,1,1\n10,0,U,1,1\n", {{"id", "t"}}).status == 201);
  CHECK(err(f.call("GET", "/sessions/t/layout", {}, {{"touch", "abc"}})) == "InvalidArgument");
  CHECK(err(f.call("POST", "/sessions/t/query", "{not json")) == "InvalidArgument");
  CHECK(err(f.call("POST", "/sessions/t/cluster", R"({"k":5})")) == "TooFewPoints");
  CHECK(err(f.call("POST", "/sessions/t/confidence", R"({"selection":{"cx":900,"cy":900,"r":1}})")) == "EmptySelection");
  CHECK(err(f.call("POST", "/sessions/t/confidence", R"({"selection":{"cx":1,"cy":1,"r":1},"c":2})")) == "InvalidConfidence");
  const auto overlap = f.call("POST", "/sessions/t/regions",
                              R"({"regions":[{"label":"a","ring_index":0,"cx":100,"cy":100,"r":50},)"
                              R"({"label":"b","ring_index":1,"cx":150,"cy":100,"r":50}]})");
  CHECK(overlap.status == 400);
  CHECK(err(overlap) == "AmbiguousRegions");
}

TEST_CASE("concurrent uploads to one id are rejected, not merged") {
  Fixture f("svc-busy");
  std::string log = kHeader;
  for (int i = 0; i < 20000; ++i) log += std::to_string(i) + ",0,M," + std::to_string(i % 1900) + ",5\n";
  std::vector<std::future<int>> results;
  for (int i = 0; i < 8; ++i) {
    results.push_back(std::async(std::launch::async, [&] { return f.call("POST", "/sessions", log, {{"id", "x"}}).status; }));
  }
  int created = 0;
  for (auto& r : results) {
    const int status = r.get();
    CHECK((status == 201 || status == 409));
    created += status == 201 ? 1 : 0;
  }
  CHECK(created >= 1);
  CHECK(f.store.get("x")->log_hash == sha256_hex(log));
}

TEST_CASE("http loopback") {
  Fixture f("svc-http");
  HttpServer server(f.api);
  std::promise<int> bound;
  std::thread worker([&] { server.listen("127.0.0.1", 0, [&](int port) { bound.set_value(port); }); });
  const int port = bound.get_future().get();
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);

  const std::string log = kHeader + "0,0,D,1,1\n10,0,U,5,5\n";
  const auto up = client.Post("/sessions?id=web", log, "text/plain");
  REQUIRE(up);
  CHECK(up->status == 201);
  const auto layout = client.Get("/sessions/web/layout?max_arc_height=0.1");
  REQUIRE(layout);
  CHECK(layout->body == f.call("GET", "/sessions/web/layout", {}, {{"max_arc_height", "0.1"}}).body);
  CHECK(client.Get("/sessions/none")->status == 404);

  const auto big = testdata::read(testdata::fixtures() / "expert.log");
  const auto form = client.Post("/sessions?id=form", big, "application/x-www-form-urlencoded");
  REQUIRE(form);
  CHECK(form->status == 201);

  server.stop();
  worker.join();
}
