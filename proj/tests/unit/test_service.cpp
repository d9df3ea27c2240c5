#include "fixtures.hpp"
#include "service/http_service.hpp"

#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <set>

using namespace elminer;
using namespace elminer::testing;
using json = nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int n = 0;
    path = std::filesystem::temp_directory_path() /
           ("elminer-service-" + std::to_string(::getpid()) + "-" + std::to_string(++n));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

json fixture_job(double support = 0.8) {
  return {{"fixtureFile", data_path("books.ttl")},
          {"classIri", kDbo + "Book"},
          {"minSupport", support},
          {"maxDepth", 2}};
}

struct Running {
  std::unique_ptr<HttpService> svc;
  std::unique_ptr<httplib::Client> cli;
  explicit Running(const std::filesystem::path& dir, std::optional<std::string> ontology = std::nullopt) {
    ServiceConfig cfg;
    cfg.data_dir = dir.string();
    cfg.port = 0;
    cfg.ontology_file = ontology;
    svc = std::make_unique<HttpService>(cfg);
    svc->start();
    cli = std::make_unique<httplib::Client>("127.0.0.1", svc->port());
    cli->set_read_timeout(30, 0);
  }
  json post(const std::string& path, const json& body, int expect) {
    auto r = cli->Post(path, body.dump(), "application/json");
    REQUIRE(r);
    CHECK_MESSAGE(r->status == expect, r->body);
    return r->body.empty() ? json() : json::parse(r->body);
  }
  json get(const std::string& path, int expect = 200) {
    auto r = cli->Get(path);
    REQUIRE(r);
    CHECK_MESSAGE(r->status == expect, r->body);
    return json::parse(r->body);
  }
  std::string text(const std::string& path, int expect = 200) {
    auto r = cli->Get(path);
    REQUIRE(r);
    CHECK(r->status == expect);
    return r->body;
  }
  json finish(const std::string& id) {
    svc->jobs().wait_for(id, std::chrono::seconds(20));
    return get("/jobs/" + id);
  }
};

struct SseEvent {
  long id;
  std::string type;
  json data;
};

std::vector<SseEvent> parse_sse(const std::string& body) {
  std::vector<SseEvent> out;
  std::istringstream in(body);
  std::string line;
  SseEvent cur{0, "", nullptr};
  while (std::getline(in, line)) {
    if (line.rfind("id: ", 0) == 0) cur.id = std::stol(line.substr(4));
    else if (line.rfind("event: ", 0) == 0) cur.type = line.substr(7);
    else if (line.rfind("data: ", 0) == 0) cur.data = json::parse(line.substr(6));
    else if (line.empty() && !cur.type.empty()) {
      out.push_back(cur);
      cur = {0, "", nullptr};
    }
  }
  return out;
}

}  // namespace

TEST_CASE("job lifecycle over HTTP") {
  TempDir dir;
  Running s(dir.path);

  auto created = s.post("/jobs", fixture_job(), 201);
  std::string id = created["jobId"];
  auto job = s.finish(id);
  CHECK(job["state"] == "Finished");
  CHECK(job["partial"] == false);
  auto& results = job["results"];
  // dbo:Book itself is suppressed: the target class trivially entails it
  REQUIRE(results.size() == 4);
  for (auto& r : results) CHECK(r["pattern"] != "dbo:Book");
  std::set<long> ids;
  for (auto& r : results) ids.insert(r["resultId"].get<long>());
  CHECK(ids.size() == results.size());
  CHECK(results.back()["conjunction"] == true);
  CHECK(results.back()["support"] == "1");
  CHECK(results.back()["proofSetSize"] == 5);

  SUBCASE("event stream replays everything and closes") {
    auto body = s.text("/jobs/" + id + "/events");
    auto events = parse_sse(body);
    REQUIRE_FALSE(events.empty());
    for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].id == static_cast<long>(i) + 1);
    CHECK(events.front().type == "job-state-changed");
    CHECK(events.back().data["state"] == "Finished");
    int mined = 0;
    for (auto& e : events) mined += e.type == "axiom-mined";
    CHECK(mined == 4);

    httplib::Headers h{{"Last-Event-ID", std::to_string(events[2].id)}};
    auto r = s.cli->Get("/jobs/" + id + "/events", h);
    REQUIRE(r);
    auto rest = parse_sse(r->body);
    REQUIRE(rest.size() == events.size() - 3);
    CHECK(rest.front().id == events[3].id);
  }

  SUBCASE("stop and review rules") {
    s.post("/jobs/" + id + "/stop", json::object(), 409);
    s.post("/jobs/" + id + "/results/1/review", {{"verdict", "accept"}}, 200);
    s.post("/jobs/" + id + "/results/1/review", {{"verdict", "accept"}}, 409);
    s.post("/jobs/" + id + "/results/2/review", {{"verdict", "reject"}}, 200);
    s.post("/jobs/" + id + "/results/99/review", {{"verdict", "reject"}}, 404);
    s.post("/jobs/" + id + "/results/2/review", {{"verdict", "maybe"}}, 400);
    auto accepted = s.get("/jobs/" + id + "/export?format=json&accepted=true");
    REQUIRE(accepted["results"].size() == 1);
    CHECK(accepted["results"][0]["reviewState"] == "Accepted");
    auto onto = s.text("/ontology/export?format=manchester");
    CHECK(onto.find(accepted["results"][0]["pattern"].get<std::string>()) != std::string::npos);
  }

  SUBCASE("exports") {
    auto m = s.text("/jobs/" + id + "/export?format=manchester");
    CHECK(m.find("dbo:Book SubClassOf: dbo:Book and dbo:CreativeWork and dbp:language value \"English\" and "
                 "dct:subject some skos:Concept\n") != std::string::npos);
    auto ttl = s.text("/jobs/" + id + "/export?format=shacl-turtle");
    CHECK(parse_turtle(ttl).triples.size() > 10);
    CHECK(s.text("/jobs/" + id + "/export?format=shacl-turtle&accepted=true").empty());
    CHECK(s.text("/jobs/" + id + "/export?format=manchester&accepted=true").empty());
    s.text("/jobs/" + id + "/export?format=pdf", 400);
  }

  s.get("/jobs/nope", 404);
  s.get("/jobs/nope/events", 404);
  s.post("/jobs", {{"fixtureFile", data_path("books.ttl")}, {"classIri", kDbo + "Book"}, {"minSupport", 0}}, 400);
  s.post("/jobs", {{"classIri", kDbo + "Book"}}, 400);
  s.post("/jobs", {{"fixtureFile", "x"}, {"classIri", kDbo + "Book"}, {"bogus", 1}}, 400);
  auto r = s.cli->Post("/jobs", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);

  auto second = s.post("/jobs", fixture_job(), 201);
  CHECK(second["jobId"] != id);
  CHECK(s.get("/jobs").size() == 2);
}

TEST_CASE("accepting an axiom suppresses it in later jobs") {
  TempDir dir;
  Running s(dir.path);
  std::string first = s.post("/jobs", fixture_job(), 201)["jobId"];
  auto job = s.finish(first);
  long rid = 0;
  for (auto& r : job["results"]) {
    if (r["pattern"] == "dct:subject some skos:Concept") rid = r["resultId"];
  }
  REQUIRE(rid > 0);
  s.post("/jobs/" + first + "/results/" + std::to_string(rid) + "/review", {{"verdict", "accept"}}, 200);

  std::string second = s.post("/jobs", fixture_job(), 201)["jobId"];
  auto rerun = s.finish(second);
  for (auto& r : rerun["results"]) CHECK(r["pattern"] != "dct:subject some skos:Concept");
  CHECK(rerun["results"].size() == job["results"].size() - 1);
  CHECK(rerun["diagnostics"]["suppressed_by_ontology"].get<long>() >= 1);
}

TEST_CASE("stopping jobs") {
  TempDir dir;
  Running s(dir.path);
  // a fixture that does not exist fails at setup
  std::string bad = s.post("/jobs", {{"fixtureFile", "/nonexistent.ttl"}, {"classIri", kDbo + "Book"}}, 201)["jobId"];
  CHECK(s.finish(bad)["state"] == "Failed");

  // occupy both workers with slow endpoint jobs so the third stays Pending
  httplib::Server slow;
  slow.Get("/sparql", [](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(300));
    res.status = 503;
  });
  int port = slow.bind_to_any_port("127.0.0.1");
  std::thread t([&] { slow.listen_after_bind(); });
  slow.wait_until_ready();
  json slow_job{{"endpointUrl", "http://127.0.0.1:" + std::to_string(port) + "/sparql"},
                {"classIri", kDbo + "Book"},
                {"maxRetries", 50}};
  std::string a = s.post("/jobs", slow_job, 201)["jobId"];
  std::string b = s.post("/jobs", slow_job, 201)["jobId"];
  std::string c = s.post("/jobs", slow_job, 201)["jobId"];
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  auto stopped = s.post("/jobs/" + c + "/stop", json::object(), 200);
  CHECK(stopped["state"] == "Stopped");
  for (auto& id : {a, b}) {
    auto r = s.post("/jobs/" + id + "/stop", json::object(), 200);
    CHECK(r["state"] == "Stopped");
    CHECK(r["partial"] == true);
  }
  slow.stop();
  t.join();
}

TEST_CASE("journal recovery") {
  TempDir dir;
  std::string id;
  json before;
  {
    Running s(dir.path);
    id = s.post("/jobs", fixture_job(), 201)["jobId"];
    before = s.finish(id);
    s.post("/jobs/" + id + "/results/1/review", {{"verdict", "accept"}}, 200);
    before = s.get("/jobs/" + id);
  }
  // a second job whose journal is damaged, and one that was running when the service died
  std::ofstream(dir.path / "jobs" / "job-broken.jsonl") << "{\"type\":\"created\",\"jobId\":\"job-broken\",\"config\":"
                                                       << fixture_job().dump() << ",\"at\":\"2026-01-01T00:00:00Z\"}\n"
                                                       << "{this is not json\n";
  std::ofstream(dir.path / "jobs" / "job-crashed.jsonl") << "{\"type\":\"created\",\"jobId\":\"job-crashed\",\"config\":"
                                                        << fixture_job().dump() << ",\"at\":\"2026-01-01T00:00:01Z\"}\n"
                                                        << "{\"type\":\"state\",\"state\":\"Running\"}\n";
  Running s(dir.path);
  auto after = s.get("/jobs/" + id);
  CHECK(after["results"] == before["results"]);
  CHECK(after["state"] == "Finished");
  auto broken = s.get("/jobs/job-broken");
  CHECK(broken["state"] == "Failed");
  CHECK(broken["stopReason"].get<std::string>().find("line 2") != std::string::npos);
  CHECK(s.get("/jobs/job-crashed")["state"] == "Stopped");
  CHECK(s.get("/jobs").size() == 3);
  // the accepted axiom survived the restart
  auto onto = s.text("/ontology/export?format=manchester");
  CHECK(onto.find("SubClassOf:") != std::string::npos);
}

TEST_CASE("fresh data directory has no jobs") {
  TempDir dir;
  Running s(dir.path);
  CHECK(s.get("/jobs").empty());
}
