#include "valueplan/project_io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

namespace valueplan {

using nlohmann::json;

namespace {

constexpr std::uint8_t kDecimalSubtype = 0x44;

// DOM builder that stores non-integer numbers as their source text.
class DecimalPreservingParser : public nlohmann::detail::json_sax_dom_parser<json> {
 public:
  DecimalPreservingParser(json& root, std::string_view text)
      : json_sax_dom_parser(root, true), text_(text) {}

  bool number_float(double /*value*/, const std::string& lexeme) {
    json::binary_t blob(std::vector<std::uint8_t>(lexeme.begin(), lexeme.end()), kDecimalSubtype);
    return binary(blob);
  }

  template <typename Exception>
  bool parse_error(std::size_t position, const std::string& /*token*/, const Exception& ex) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(position, text_.size());
    for (std::size_t k = 0; k + 1 < end; ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = ex.what();
    if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError(what, line, column, "");
  }

 private:
  std::string_view text_;
};

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ParseError(path + ": " + message, 0, 0, path);
}

void expect_fields(const json& node, const std::string& path,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) {
  if (!node.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, value] : node.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) schema_error(path, "unknown field '" + key + "'");
  }
  for (std::string_view key : required) {
    if (!node.contains(std::string(key))) schema_error(path, "missing field '" + std::string(key) + "'");
  }
}

const json& expect_array(const json& node, const std::string& path) {
  if (!node.is_array()) schema_error(path, "expected an array");
  return node;
}

int json_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) schema_error(path, "expected an integer");
  const auto value = node.get<std::int64_t>();
  if (value < -1'000'000'000 || value > 1'000'000'000) schema_error(path, "integer out of range");
  return static_cast<int>(value);
}

std::string json_string(const json& node, const std::string& path) {
  if (!node.is_string()) schema_error(path, "expected a string");
  return node.get<std::string>();
}

json decimal_to_json(Decimal d) {
  if (d.is_integer()) return d.scaled() / Decimal::kScale;
  const std::string text = d.to_string();
  return json::binary_t(std::vector<std::uint8_t>(text.begin(), text.end()), kDecimalSubtype);
}

json strength_to_json(double strength) {
  if (auto d = Decimal::parse(format_number(strength))) return decimal_to_json(*d);
  return strength;
}

// nlohmann's dump(2) layout, except decimal lexemes print verbatim and
// doubles use the shortest round-trip form.
void write_json(std::string& out, const json& node, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (node.type()) {
    case json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : node.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        write_json(out, value, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < node.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        write_json(out, node[k], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::binary: {
      const auto& bytes = node.get_binary();
      out.append(bytes.begin(), bytes.end());
      return;
    }
    case json::value_t::number_float:
      out += format_number(node.get<double>());
      return;
    default:
      out += node.dump();
  }
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column, std::string path)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line), column_(column), path_(std::move(path)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string out = std::to_string(violations.size()) + " validation error(s)";
        for (const Violation& v : violations) out += "\n  " + v.message();
        return out;
      }()),
      violations_(std::move(violations)) {}

json parse_json_document(std::string_view text) {
  json root;
  DecimalPreservingParser handler(root, text);
  json::sax_parse(text.begin(), text.end(), &handler);
  return root;
}

Decimal json_decimal(const json& node, const std::string& path) {
  if (node.is_number_integer()) {
    const auto value = node.get<std::int64_t>();
    if (value <= -Decimal::kMaxWhole || value >= Decimal::kMaxWhole) schema_error(path, "number out of range");
    return Decimal::from_integer(value);
  }
  std::string lexeme;
  if (node.is_binary() && node.get_binary().has_subtype() &&
      node.get_binary().subtype() == kDecimalSubtype) {
    const auto& bytes = node.get_binary();
    lexeme.assign(bytes.begin(), bytes.end());
  } else if (node.is_number_float()) {
    lexeme = format_number(node.get<double>());
  } else {
    schema_error(path, "expected a number");
  }
  auto parsed = Decimal::parse(lexeme);
  if (!parsed) {
    schema_error(path, "'" + lexeme + "' is not a decimal with at most " +
                           std::to_string(Decimal::kFractionDigits) + " fractional digits");
  }
  return *parsed;
}

Project project_from_json(const json& doc) {
  expect_fields(doc, "$", {"value_types", "requirements", "budget"}, {"graphs", "precedences", "betas"});
  Project project;
  std::vector<Violation> violations;

  const json& types = expect_array(doc["value_types"], "value_types");
  for (std::size_t k = 0; k < types.size(); ++k) {
    const std::string path = at("value_types", k);
    expect_fields(types[k], path, {"index", "name"});
    project.value_types.push_back({json_int(types[k]["index"], path + ".index"),
                                   json_string(types[k]["name"], path + ".name")});
  }
  std::stable_sort(project.value_types.begin(), project.value_types.end(),
                   [](const ValueType& a, const ValueType& b) { return a.index < b.index; });

  const json& reqs = expect_array(doc["requirements"], "requirements");
  for (std::size_t k = 0; k < reqs.size(); ++k) {
    const std::string path = at("requirements", k);
    expect_fields(reqs[k], path, {"id", "label", "cost", "expected_values"});
    Requirement r;
    r.id = json_int(reqs[k]["id"], path + ".id");
    r.label = json_string(reqs[k]["label"], path + ".label");
    r.cost = json_decimal(reqs[k]["cost"], path + ".cost");
    const json& values = expect_array(reqs[k]["expected_values"], path + ".expected_values");
    for (std::size_t t = 0; t < values.size(); ++t)
      r.expected_values.push_back(json_decimal(values[t], at(path + ".expected_values", t)));
    project.requirements.push_back(std::move(r));
  }
  std::stable_sort(project.requirements.begin(), project.requirements.end(),
                   [](const Requirement& a, const Requirement& b) { return a.id < b.id; });

  const auto n = static_cast<int>(project.requirements.size());
  const auto type_count = static_cast<int>(project.value_types.size());
  for (int t = 1; t <= type_count; ++t) project.graphs.emplace_back(t, static_cast<std::size_t>(n));

  if (doc.contains("graphs")) {
    const json& graphs = expect_array(doc["graphs"], "graphs");
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const std::string path = at("graphs", k);
      expect_fields(graphs[k], path, {"type", "edges"});
      const int type = json_int(graphs[k]["type"], path + ".type");
      const bool type_ok = type >= 1 && type <= type_count;
      if (!type_ok) violations.push_back({"graphs.type", "graph references an unknown value type", {type}});
      const json& edges = expect_array(graphs[k]["edges"], path + ".edges");
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string epath = at(path + ".edges", e);
        expect_fields(edges[e], epath, {"from", "to", "strength", "sign"});
        const int from = json_int(edges[e]["from"], epath + ".from");
        const int to = json_int(edges[e]["to"], epath + ".to");
        const Decimal strength = json_decimal(edges[e]["strength"], epath + ".strength");
        const std::string sign = json_string(edges[e]["sign"], epath + ".sign");
        const std::vector<int> ids{type, from, to};

        bool ok = type_ok;
        if (from < 1 || from > n || to < 1 || to > n) {
          violations.push_back({"graphs.edges", "edge references an unknown requirement", ids});
          ok = false;
        } else if (from == to) {
          violations.push_back({"graphs.edges", "self-edges are not allowed", ids});
          ok = false;
        }
        if (!(strength > Decimal{} && strength <= Decimal::from_integer(1))) {
          violations.push_back({"graphs.edges", "strength must be in (0, 1], got " + strength.to_string(), ids});
          ok = false;
        }
        if (sign != "+" && sign != "-") {
          violations.push_back({"graphs.edges", "sign must be \"+\" or \"-\"", ids});
          ok = false;
        }
        if (!seen.emplace(type, from, to).second) {
          violations.push_back({"graphs.edges", "duplicate edge", ids});
          ok = false;
        }
        if (ok) {
          project.graphs[type - 1].set_edge(
              from - 1, to - 1, {strength.to_double(), sign == "+" ? Sign::positive : Sign::negative});
        }
      }
    }
  }

  if (doc.contains("precedences")) {
    const json& pairs = expect_array(doc["precedences"], "precedences");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string path = at("precedences", k);
      expect_fields(pairs[k], path, {"dependent", "prerequisite", "kind"});
      PrecedencePair p;
      p.dependent = json_int(pairs[k]["dependent"], path + ".dependent");
      p.prerequisite = json_int(pairs[k]["prerequisite"], path + ".prerequisite");
      const std::string kind = json_string(pairs[k]["kind"], path + ".kind");
      if (kind == "requires") {
        p.kind = PrecedenceKind::requires_prerequisite;
      } else if (kind == "conflicts") {
        p.kind = PrecedenceKind::conflicts_with;
      } else {
        schema_error(path + ".kind", "expected \"requires\" or \"conflicts\"");
      }
      project.precedences.push_back(p);
    }
    std::stable_sort(project.precedences.begin(), project.precedences.end(),
                     [](const PrecedencePair& a, const PrecedencePair& b) {
                       return std::tie(a.dependent, a.prerequisite, a.kind) <
                              std::tie(b.dependent, b.prerequisite, b.kind);
                     });
  }

  project.budget = json_decimal(doc["budget"], "budget");

  if (doc.contains("betas")) {
    const json& betas = doc["betas"];
    if (!betas.is_object()) schema_error("betas", "expected an object");
    for (const auto& [key, value] : betas.items()) {
      int index = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
      if (ec != std::errc{} || ptr != key.data() + key.size()) {
        schema_error("betas", "key '" + key + "' is not a value-type index");
      }
      project.betas[index] = json_decimal(value, "betas." + key);
    }
  }

  for (Violation& v : validate_project(project)) violations.push_back(std::move(v));
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return project;
}

Project parse_project(std::string_view text) { return project_from_json(parse_json_document(text)); }

static json project_to_json(const Project& project) {
  json doc = json::object();

  json types = json::array();
  for (const ValueType& v : project.value_types) types.push_back({{"index", v.index}, {"name", v.name}});
  doc["value_types"] = std::move(types);

  json reqs = json::array();
  for (const Requirement& r : project.requirements) {
    json values = json::array();
    for (Decimal v : r.expected_values) values.push_back(decimal_to_json(v));
    reqs.push_back({{"id", r.id}, {"label", r.label}, {"cost", decimal_to_json(r.cost)},
                    {"expected_values", std::move(values)}});
  }
  doc["requirements"] = std::move(reqs);

  json graphs = json::array();
  for (const TypedValueGraph& g : project.graphs) {
    if (g.edge_count() == 0) continue;
    json edges = json::array();
    g.for_each_edge([&](std::size_t i, std::size_t j, const Dependency& d) {
      edges.push_back({{"from", static_cast<int>(i) + 1},
                       {"to", static_cast<int>(j) + 1},
                       {"strength", strength_to_json(d.strength)},
                       {"sign", d.sign == Sign::positive ? "+" : "-"}});
    });
    graphs.push_back({{"type", g.value_type()}, {"edges", std::move(edges)}});
  }
  doc["graphs"] = std::move(graphs);

  std::vector<PrecedencePair> pairs = project.precedences;
  std::stable_sort(pairs.begin(), pairs.end(), [](const PrecedencePair& a, const PrecedencePair& b) {
    return std::tie(a.dependent, a.prerequisite, a.kind) < std::tie(b.dependent, b.prerequisite, b.kind);
  });
  json precedences = json::array();
  for (const PrecedencePair& p : pairs) {
    precedences.push_back({{"dependent", p.dependent},
                           {"prerequisite", p.prerequisite},
                           {"kind", p.kind == PrecedenceKind::requires_prerequisite ? "requires" : "conflicts"}});
  }
  doc["precedences"] = std::move(precedences);

  doc["budget"] = decimal_to_json(project.budget);
  json betas = json::object();
  for (const auto& [t, beta] : project.betas) betas[std::to_string(t)] = decimal_to_json(beta);
  doc["betas"] = std::move(betas);
  return doc;
}

std::string serialize_project(const Project& project) {
  std::string out;
  write_json(out, project_to_json(project), 0);
  out += '\n';
  return out;
}

}  // namespace valueplan
