#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <future>

#include "support/fixtures.hpp"
#include "support/service_harness.hpp"
#include "valueplan/project_io.hpp"
#include "valueplan/report_io.hpp"

using namespace valueplan;
using nlohmann::json;

namespace {

const std::string kDemo = fixtures::read_text(fixtures::data_path("demo.json"));
const std::string kInfluence = fixtures::read_text(fixtures::data_path("influence.json"));

std::string create(httplib::Client& c, const std::string& document) {
  auto res = c.Post("/api/projects", document, "application/json");
  REQUIRE(res);
  REQUIRE(res->status == 201);
  return json::parse(res->body)["id"].get<std::string>();
}

}  // namespace

TEST_CASE("create and fetch round-trips the canonical document") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kInfluence);
  auto res = c.Get("/api/projects/" + id);
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == serialize_project(parse_project(kInfluence)));
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
}

TEST_CASE("error statuses") {
  fixtures::RunningService server;
  auto c = server.client();

  auto malformed = c.Post("/api/projects", "{\"value_types\": [", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 422);
  CHECK(json::parse(malformed->body)["line"] == 1);

  auto invalid = c.Post("/api/projects", fixtures::read_text(fixtures::data_path("broken_length.json")),
                        "application/json");
  REQUIRE(invalid);
  CHECK(invalid->status == 400);
  CHECK(json::parse(invalid->body)["violations"][0]["ids"] == json::array({3}));

  CHECK(c.Get("/api/projects/0123456789abcdef")->status == 404);
  CHECK(c.Put("/api/projects/0123456789abcdef", kDemo, "application/json")->status == 404);
  CHECK(c.Post("/api/projects/0123456789abcdef/solve", "", "application/json")->status == 404);

  const std::string id = create(c, kDemo);
  CHECK(c.Get("/api/projects/" + id + "/influence?type=2")->status == 400);
  CHECK(c.Post("/api/projects/" + id + "/whatif", "{\"budget\": \"x\"}", "application/json")->status == 422);
  CHECK(c.Post("/api/projects/" + id + "/whatif", "{\"colour\": 1}", "application/json")->status == 422);
  CHECK(c.Post("/api/projects/" + id + "/whatif", "{\"betas\": {\"1\": 2}}", "application/json")->status == 400);
  CHECK(c.Put("/api/projects/" + id, "{}", "application/json")->status == 422);
}

TEST_CASE("whatif never persists overrides") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kDemo);
  const std::string before = c.Get("/api/projects/" + id)->body;

  auto res = c.Post("/api/projects/" + id + "/whatif", R"({"budget": 9})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const json report = json::parse(res->body);
  CHECK(report["objective"] == 18);
  CHECK(report["selection"] == json::array({1, 2}));

  for (int k = 0; k < 5; ++k)
    c.Post("/api/projects/" + id + "/whatif", R"({"budget": 2.5, "timeout": 1})", "application/json");
  CHECK(std::hash<std::string>{}(c.Get("/api/projects/" + id)->body) == std::hash<std::string>{}(before));

  auto plain = c.Post("/api/projects/" + id + "/solve", "", "application/json");
  CHECK(json::parse(plain->body)["objective"] == 16);
}

TEST_CASE("solve saves overrides") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kDemo);
  auto res = c.Post("/api/projects/" + id + "/solve", R"({"budget": 9})", "application/json");
  REQUIRE(res);
  CHECK(json::parse(res->body)["objective"] == 18);
  CHECK(parse_project(c.Get("/api/projects/" + id)->body).budget == fixtures::dec(9));
}

TEST_CASE("infeasible solves answer 409 with the report") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kInfluence);
  auto res = c.Post("/api/projects/" + id + "/whatif", R"({"betas": {"2": 100}})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 409);
  CHECK(json::parse(res->body)["status"] == "infeasible");
}

TEST_CASE("influence matches the library encoding byte for byte") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kInfluence);
  const Project p = parse_project(kInfluence);
  const auto inf = compute_influences(p);

  auto res = c.Get("/api/projects/" + id + "/influence?type=1");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == influence_to_json(1, inf[0]).dump());
  CHECK(json::parse(res->body)["matrix"][0][2].get<double>() == doctest::Approx(-0.1));
  CHECK(c.Get("/api/projects/" + id + "/influence")->body == res->body);
  CHECK(c.Get("/api/projects/" + id + "/influence?type=2")->body == influence_to_json(2, inf[1]).dump());
}

TEST_CASE("replacing a project refreshes its influences") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kInfluence);
  Project p = parse_project(kInfluence);
  p.graphs[0] = TypedValueGraph(1, 3);
  auto put = c.Put("/api/projects/" + id, serialize_project(p), "application/json");
  REQUIRE(put);
  CHECK(put->status == 200);
  const json matrix = json::parse(c.Get("/api/projects/" + id + "/influence?type=1")->body)["matrix"];
  CHECK(matrix[0][2] == 0);
  CHECK(c.Get("/api/projects/" + id)->body == serialize_project(p));
}

TEST_CASE("concurrent solves agree") {
  fixtures::RunningService server;
  auto c = server.client();
  const std::string id = create(c, kInfluence);
  std::vector<std::future<std::string>> results;
  for (int k = 0; k < 8; ++k) {
    results.push_back(std::async(std::launch::async, [&server, id] {
      auto client = server.client();
      return client.Post("/api/projects/" + id + "/solve", "", "application/json")->body;
    }));
  }
  const std::string first = results[0].get();
  for (std::size_t k = 1; k < results.size(); ++k) CHECK(results[k].get() == first);
}

TEST_CASE("value-type catalog and CORS preflight") {
  fixtures::RunningService server;
  auto c = server.client();
  auto res = c.Get("/api/value-types");
  REQUIRE(res);
  const json catalog = json::parse(res->body);
  CHECK(catalog.size() == 58);
  CHECK(catalog[0]["name"] == "Wealth");
  auto pre = c.Options("/api/projects");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("PUT") != std::string::npos);
}

TEST_CASE("write-through directory") {
  const auto dir = std::filesystem::temp_directory_path() / "valueplan_service_store";
  std::filesystem::remove_all(dir);
  std::string id;
  {
    ServiceConfig config;
    config.data_directory = dir;
    fixtures::RunningService server(config);
    auto c = server.client();
    id = create(c, kDemo);
    CHECK(std::filesystem::exists(dir / (id + ".json")));
  }
  ProjectStore reloaded(dir);
  auto entry = reloaded.get(id);
  REQUIRE(entry);
  CHECK(entry->document == serialize_project(parse_project(kDemo)));
  std::filesystem::remove_all(dir);
}
