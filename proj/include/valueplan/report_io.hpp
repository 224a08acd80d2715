#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "valueplan/model.hpp"
#include "valueplan/planner.hpp"

namespace valueplan {

/// Machine-readable solve result with exactly the keys status, selection
/// (selected ids), objective, delivered (per value-type index) and penalties
/// (per requirement id, one entry per type).
nlohmann::json report_to_json(const SolveReport& report);
std::string format_report_table(const Project& project, const SolveReport& report);

/// {"type": t, "matrix": [[...], ...]}; row i holds I(i, j) for every j.
nlohmann::json influence_to_json(int value_type, const InfluenceMatrix& influence);
std::string format_influence_table(int value_type, const InfluenceMatrix& influence);

nlohmann::json value_types_to_json(const std::vector<ValueType>& types);

/// Per-solve adjustments: budget, value bounds, time limit.
struct SolveOverrides {
  std::optional<Decimal> budget;
  std::map<int, Decimal> betas;
  std::optional<std::chrono::milliseconds> timeout;
};

/// Reads {budget?, betas?, timeout? (seconds)}. A null body means no overrides.
SolveOverrides overrides_from_json(const nlohmann::json& body);

/// Copy of `project` with overrides applied and revalidated. Throws
/// ValidationError when the result is invalid.
Project apply_overrides(const Project& project, const SolveOverrides& overrides);

}  // namespace valueplan
