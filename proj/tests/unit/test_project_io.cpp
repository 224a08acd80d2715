#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "valueplan/project_io.hpp"

using namespace valueplan;
using fixtures::dec;

namespace {

const char* kMinimal = R"({
  "value_types": [{"index": 1, "name": "Wealth"}],
  "requirements": [{"id": 1, "label": "Only", "cost": 0, "expected_values": [0]}],
  "budget": 0
})";

std::string with_edge(const std::string& strength) {
  return R"({
  "value_types": [{"index": 1, "name": "Wealth"}],
  "requirements": [
    {"id": 1, "label": "A", "cost": 1, "expected_values": [1]},
    {"id": 2, "label": "B", "cost": 1, "expected_values": [1]}
  ],
  "graphs": [{"type": 1, "edges": [{"from": 1, "to": 2, "strength": )" +
         strength + R"(, "sign": "+"}]}],
  "budget": 1
})";
}

}  // namespace

TEST_CASE("minimal document") {
  const Project p = parse_project(kMinimal);
  CHECK(p.requirement_count() == 1);
  CHECK(p.type_count() == 1);
  CHECK(p.graphs.size() == 1);
  CHECK(p.budget == Decimal{});
}

TEST_CASE("decimals survive parsing exactly") {
  const Project p = parse_project(fixtures::read_text(fixtures::data_path("influence.json")));
  CHECK(p.requirements[0].cost == dec("2.5"));
  CHECK(p.requirements[2].cost == dec("1.5"));
  CHECK(p.betas.at(2) == dec(3));
  CHECK(p.graphs[0].edge(0, 1)->strength == 0.6);
  CHECK(p.graphs[1].edge(0, 1)->sign == Sign::negative);
  CHECK(p.precedences == std::vector<PrecedencePair>{{3, 1, PrecedenceKind::requires_prerequisite}});
}

TEST_CASE("edge strength above one names the edge") {
  try {
    parse_project(with_edge("1.5"));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].field == "graphs.edges");
    CHECK(e.violations()[0].ids == std::vector<int>{1, 1, 2});
  }
  CHECK_THROWS_AS(parse_project(with_edge("0")), ValidationError);
  CHECK_NOTHROW(parse_project(with_edge("1")));
  CHECK_NOTHROW(parse_project(with_edge("0.000001")));
  CHECK_THROWS_AS(parse_project(with_edge("0.0000001")), ParseError);
}

TEST_CASE("short expected-value vector names requirement 3") {
  try {
    parse_project(fixtures::read_text(fixtures::data_path("broken_length.json")));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].ids == std::vector<int>{3});
  }
}

TEST_CASE("syntax errors carry a position") {
  const std::string text = "{\n  \"value_types\": [\n    {\"index\": 1,, \"name\": \"Wealth\"}\n  ]\n}";
  try {
    parse_project(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("schema problems are parse errors") {
  SUBCASE("unknown top-level field") {
    std::string text = kMinimal;
    text.insert(1, "\"extra\": 1,");
    CHECK_THROWS_WITH_AS(parse_project(text), doctest::Contains("unknown field 'extra'"), ParseError);
  }
  SUBCASE("unknown requirement field") {
    std::string text = kMinimal;
    text.replace(text.find("\"cost\""), 6, "\"price\"");
    CHECK_THROWS_AS(parse_project(text), ParseError);
  }
  SUBCASE("missing budget") {
    std::string text = kMinimal;
    text.replace(text.find(",\n  \"budget\": 0"), 15, "");
    CHECK_THROWS_WITH_AS(parse_project(text), doctest::Contains("budget"), ParseError);
  }
  SUBCASE("string where a number belongs") {
    std::string text = kMinimal;
    text.replace(text.find("\"cost\": 0"), 9, "\"cost\": \"0\"");
    CHECK_THROWS_AS(parse_project(text), ParseError);
  }
}

TEST_CASE("document-level edge problems are violations") {
  auto doc = [](const std::string& edges) {
    return R"({"value_types": [{"index": 1, "name": "Wealth"}],
      "requirements": [{"id": 1, "label": "A", "cost": 1, "expected_values": [1]},
                       {"id": 2, "label": "B", "cost": 1, "expected_values": [1]}],
      "graphs": [{"type": 1, "edges": [)" + edges + R"(]}], "budget": 1})";
  };
  CHECK_THROWS_AS(parse_project(doc(R"({"from": 1, "to": 1, "strength": 0.5, "sign": "+"})")), ValidationError);
  CHECK_THROWS_AS(parse_project(doc(R"({"from": 1, "to": 3, "strength": 0.5, "sign": "+"})")), ValidationError);
  CHECK_THROWS_AS(parse_project(doc(R"({"from": 1, "to": 2, "strength": 0.5, "sign": "±"})")), ValidationError);
  CHECK_THROWS_AS(parse_project(doc(R"({"from": 1, "to": 2, "strength": 0.5, "sign": "+"},
                                       {"from": 1, "to": 2, "strength": 0.7, "sign": "-"})")),
                  ValidationError);
}

TEST_CASE("empty project serializes to canonical empty sections") {
  const Project p = parse_project(R"({"value_types": [{"index": 1, "name": "Wealth"}], "requirements": [], "budget": 0})");
  const std::string text = serialize_project(p);
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["graphs"] == nlohmann::json::array());
  CHECK(doc["precedences"] == nlohmann::json::array());
  CHECK(doc["betas"] == nlohmann::json::object());
  CHECK(doc["requirements"] == nlohmann::json::array());
  CHECK(parse_project(text) == p);
}

TEST_CASE("serialization is canonical") {
  const std::string a = R"({"budget": 5, "requirements": [
      {"id": 2, "label": "B", "cost": 1, "expected_values": [2]},
      {"id": 1, "label": "A", "cost": 1.50, "expected_values": [1]}],
    "value_types": [{"name": "Wealth", "index": 1}],
    "precedences": [{"dependent": 2, "prerequisite": 1, "kind": "requires"},
                    {"dependent": 1, "prerequisite": 2, "kind": "conflicts"}],
    "graphs": [{"type": 1, "edges": [{"from": 2, "to": 1, "strength": 0.5, "sign": "-"},
                                     {"from": 1, "to": 2, "strength": 0.25, "sign": "+"}]}]})";
  const Project p = parse_project(a);
  const std::string first = serialize_project(p);
  CHECK(serialize_project(parse_project(first)) == first);
  CHECK(first.find("\"cost\": 1.5") != std::string::npos);
  CHECK(first.find("\"budget\"") < first.find("\"graphs\""));
  CHECK(first.find("\"from\": 1") < first.find("\"from\": 2"));
}

TEST_CASE("parse and serialize are inverse on random projects") {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const Project p = fixtures::random_document_project(rng);
    REQUIRE(validate_project(p).empty());
    const std::string text = serialize_project(p);
    const Project back = parse_project(text);
    CAPTURE(text);
    CHECK(back == p);
    CHECK(serialize_project(back) == text);
  }
}

TEST_CASE("generic JSON keeps decimal lexemes") {
  const nlohmann::json doc = parse_json_document(R"({"a": 0.1, "b": 3, "c": 1e-3})");
  CHECK(json_decimal(doc["a"], "a") == dec("0.1"));
  CHECK(json_decimal(doc["b"], "b") == dec(3));
  CHECK(json_decimal(doc["c"], "c") == dec("0.001"));
  CHECK_THROWS_AS(json_decimal(nlohmann::json("x"), "x"), ParseError);
}
