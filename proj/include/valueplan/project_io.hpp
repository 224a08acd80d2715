#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "valueplan/decimal.hpp"
#include "valueplan/model.hpp"

namespace valueplan {

/// Malformed document: bad syntax (line/column set) or a schema problem such
/// as an unknown field or a wrong value type (line/column zero, path set).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::string path);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

/// Well-formed document describing an invalid project.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Parses JSON text keeping the exact lexeme of every non-integer number, so
/// decimals never pass through binary floating point. Such numbers come back
/// as binary values; read them with json_decimal().
nlohmann::json parse_json_document(std::string_view text);

/// Reads an integer or decimal-lexeme node. Throws ParseError naming `path`.
Decimal json_decimal(const nlohmann::json& node, const std::string& path);

/// Document sections: value_types, requirements, graphs, precedences, budget,
/// betas. graphs, precedences and betas may be omitted.
Project parse_project(std::string_view text);
Project project_from_json(const nlohmann::json& document);

/// Canonical form: keys sorted, requirements by id, edges by (type, from, to),
/// only graphs with edges listed. Equal projects serialize to identical bytes.
std::string serialize_project(const Project& project);

}  // namespace valueplan
