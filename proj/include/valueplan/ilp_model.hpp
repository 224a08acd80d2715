#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valueplan/model.hpp"
#include "valueplan/planner.hpp"

namespace valueplan {

enum class RowSense { less_equal, greater_equal };

struct LinearTerm {
  double coefficient = 0.0;
  std::string variable;
};

struct LinearRow {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::less_equal;
  double rhs = 0.0;
};

struct VariableBound {
  std::string variable;
  double lower = 0.0;
  double upper = 1.0;
};

/// The release-planning integer program written out row by row.
///
/// Variables: x{i}, g{i} binary; y{i}_{t}, th{i}_{t} continuous in [0, 1].
/// Row families, in emission order:
///   c_budget               total cost within budget
///   c_prec_{i}_{j}         x_i <= x_j when i requires j
///   c_conf_{i}_{j}         x_i + x_j <= 1 when i conflicts with j
///   c_value_{t}            delivered type-t value >= beta_t
///   c_pen_{i}_{j}_{t}      th_i_t + I_ijt x_j >= (|I_ijt| + I_ijt) / 2, all i != j
///   c_glink{1..4}_{i}      -g <= x <= g and 1-(1-g) <= x <= 1+(1-g)
///   c_glink{1..4}_{i}_{t}  -g <= y <= g and -(1-g) <= y - th <= 1-g
struct IlpModel {
  std::vector<LinearTerm> objective;  // maximized
  std::vector<LinearRow> rows;
  std::vector<VariableBound> bounds;
  std::vector<std::string> binaries;

  std::size_t count_rows(std::string_view prefix) const;
};

IlpModel build_ilp_model(const Project& project, std::span<const InfluenceMatrix> influences);

/// CPLEX LP text for the model.
std::string to_lp_text(const IlpModel& model);

std::string export_lp(const Project& project, std::span<const InfluenceMatrix> influences);

using VariableAssignment = std::map<std::string, double>;

/// Values for every model variable implied by a selection: g = x, th at the
/// smallest value its penalty rows allow, y = x * th.
VariableAssignment linearized_assignment(const Project& project,
                                         std::span<const InfluenceMatrix> influences,
                                         const Selection& selection);

/// Names of rows and bounds the assignment violates by more than `tolerance`.
std::vector<std::string> violated_rows(const IlpModel& model, const VariableAssignment& values,
                                       double tolerance = 1e-9);

double objective_value(const IlpModel& model, const VariableAssignment& values);

}  // namespace valueplan
