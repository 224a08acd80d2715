#include "valueplan/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "valueplan/project_io.hpp"

namespace valueplan {

using nlohmann::json;

namespace {

// Integral values print without a trailing ".0".
json number(double value) {
  if (value == 0.0) return 0;
  if (std::trunc(value) == value && std::abs(value) < 1e15) return static_cast<std::int64_t>(value);
  return value;
}

// Six significant digits for tables.
std::string brief(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << (value == 0.0 ? 0.0 : value);
  return out.str();
}

}  // namespace

json report_to_json(const SolveReport& report) {
  const ReleasePlan& plan = report.plan;
  json selection = json::array();
  for (std::size_t i = 0; i < plan.selection.size(); ++i)
    if (plan.selection[i]) selection.push_back(static_cast<int>(i) + 1);

  json delivered = json::object();
  for (std::size_t t = 0; t < plan.delivered.size(); ++t)
    delivered[std::to_string(t + 1)] = number(plan.delivered[t]);

  json penalties = json::object();
  for (std::size_t i = 0; i < plan.penalties.rows(); ++i) {
    json row = json::array();
    for (double theta : plan.penalties.row(i)) row.push_back(number(theta));
    penalties[std::to_string(i + 1)] = std::move(row);
  }

  return {{"status", to_string(report.status)},
          {"selection", std::move(selection)},
          {"objective", number(plan.objective)},
          {"delivered", std::move(delivered)},
          {"penalties", std::move(penalties)}};
}

std::string format_report_table(const Project& project, const SolveReport& report) {
  const ReleasePlan& plan = report.plan;
  std::ostringstream out;
  out << "Status:    " << to_string(report.status) << '\n';
  out << "Objective: " << format_number(plan.objective) << '\n';
  out << "Selection: {";
  bool first = true;
  for (std::size_t i = 0; i < plan.selection.size(); ++i) {
    if (!plan.selection[i]) continue;
    out << (first ? "" : ", ") << i + 1;
    first = false;
  }
  out << "}\n";
  out << "Nodes:     " << report.nodes_explored << "  ("
      << std::chrono::duration<double, std::milli>(report.wall_time).count() << " ms)\n\n";

  out << std::left << std::setw(6) << "id" << std::setw(24) << "label" << std::setw(5) << "sel"
      << std::setw(12) << "cost" << std::setw(12) << "economic" << "max penalty\n";
  for (std::size_t i = 0; i < project.requirement_count(); ++i) {
    const Requirement& r = project.requirements[i];
    double worst = 0.0;
    for (double theta : plan.penalties.row(i)) worst = std::max(worst, theta);
    out << std::setw(6) << r.id << std::setw(24) << r.label.substr(0, 23) << std::setw(5)
        << (plan.selection[i] ? "x" : "") << std::setw(12) << r.cost.to_string() << std::setw(12)
        << (r.expected_values.empty() ? "0" : r.expected_values[0].to_string())
        << brief(worst) << '\n';
  }

  out << "\nDelivered value per type:\n";
  for (std::size_t t = 0; t < plan.delivered.size(); ++t) {
    const int index = static_cast<int>(t) + 1;
    out << "  " << std::setw(4) << index << std::setw(32) << project.value_types[t].name
        << brief(plan.delivered[t]);
    if (auto it = project.betas.find(index); it != project.betas.end())
      out << "  (>= " << it->second.to_string() << ")";
    out << '\n';
  }
  return out.str();
}

json influence_to_json(int value_type, const InfluenceMatrix& influence) {
  json matrix = json::array();
  for (std::size_t i = 0; i < influence.size(); ++i) {
    json row = json::array();
    for (double v : influence.values.row(i)) row.push_back(number(v));
    matrix.push_back(std::move(row));
  }
  return {{"type", value_type}, {"matrix", std::move(matrix)}};
}

std::string format_influence_table(int value_type, const InfluenceMatrix& influence) {
  std::ostringstream out;
  out << "Influence, value type " << value_type << " (row i, column j: effect of j on i)\n";
  out << std::right << std::setw(6) << "";
  for (std::size_t j = 0; j < influence.size(); ++j) out << std::setw(10) << ("r" + std::to_string(j + 1));
  out << '\n';
  for (std::size_t i = 0; i < influence.size(); ++i) {
    out << std::setw(6) << ("r" + std::to_string(i + 1));
    for (std::size_t j = 0; j < influence.size(); ++j) out << std::setw(10) << brief(influence(i, j));
    out << '\n';
  }
  return out.str();
}

json value_types_to_json(const std::vector<ValueType>& types) {
  json out = json::array();
  for (const ValueType& v : types) out.push_back({{"index", v.index}, {"name", v.name}});
  return out;
}

SolveOverrides overrides_from_json(const json& body) {
  SolveOverrides out;
  if (body.is_null()) return out;
  if (!body.is_object()) throw ParseError("override body must be an object", 0, 0, "$");
  for (const auto& [key, value] : body.items()) {
    if (key == "budget") {
      out.budget = json_decimal(value, "budget");
    } else if (key == "betas") {
      if (!value.is_object()) throw ParseError("betas: expected an object", 0, 0, "betas");
      for (const auto& [t, beta] : value.items()) {
        int index = 0;
        try {
          std::size_t used = 0;
          index = std::stoi(t, &used);
          if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
          throw ParseError("betas: key '" + t + "' is not a value-type index", 0, 0, "betas");
        }
        out.betas[index] = json_decimal(beta, "betas." + t);
      }
    } else if (key == "timeout") {
      const Decimal seconds = json_decimal(value, "timeout");
      if (seconds <= Decimal{}) throw ParseError("timeout: must be positive", 0, 0, "timeout");
      out.timeout = std::chrono::milliseconds(seconds.scaled() / (Decimal::kScale / 1000));
    } else {
      throw ParseError("unknown field '" + key + "'", 0, 0, key);
    }
  }
  return out;
}

Project apply_overrides(const Project& project, const SolveOverrides& overrides) {
  Project out = project;
  if (overrides.budget) out.budget = *overrides.budget;
  for (const auto& [t, beta] : overrides.betas) out.betas[t] = beta;
  if (auto violations = validate_project(out); !violations.empty()) throw ValidationError(std::move(violations));
  return out;
}

}  // namespace valueplan
