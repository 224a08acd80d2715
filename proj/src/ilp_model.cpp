#include "valueplan/ilp_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace valueplan {

namespace {

std::string x_var(std::size_t i) { return "x" + std::to_string(i + 1); }
std::string g_var(std::size_t i) { return "g" + std::to_string(i + 1); }
std::string y_var(std::size_t i, std::size_t t) {
  return "y" + std::to_string(i + 1) + "_" + std::to_string(t + 1);
}
std::string th_var(std::size_t i, std::size_t t) {
  return "th" + std::to_string(i + 1) + "_" + std::to_string(t + 1);
}

// sum_i E(v_i,t) x_i - E(v_i,t) y_i,t
std::vector<LinearTerm> delivered_terms(const Project& project, std::size_t t) {
  std::vector<LinearTerm> terms;
  for (std::size_t i = 0; i < project.requirement_count(); ++i) {
    const double e = project.requirements[i].expected_values[t].to_double();
    terms.push_back({e, x_var(i)});
    terms.push_back({-e, y_var(i, t)});
  }
  return terms;
}

}  // namespace

std::size_t IlpModel::count_rows(std::string_view prefix) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const LinearRow& r) {
    return std::string_view(r.name).starts_with(prefix);
  }));
}

IlpModel build_ilp_model(const Project& project, std::span<const InfluenceMatrix> influences) {
  const std::size_t n = project.requirement_count();
  const std::size_t types = project.type_count();
  IlpModel model;

  if (types > 0) model.objective = delivered_terms(project, 0);

  LinearRow budget{"c_budget", {}, RowSense::less_equal, project.budget.to_double()};
  for (std::size_t i = 0; i < n; ++i)
    budget.terms.push_back({project.requirements[i].cost.to_double(), x_var(i)});
  model.rows.push_back(std::move(budget));

  std::set<std::tuple<int, int, PrecedenceKind>> emitted;
  for (const PrecedencePair& p : project.precedences) {
    if (!emitted.emplace(p.dependent, p.prerequisite, p.kind).second) continue;
    const auto a = static_cast<std::size_t>(p.dependent - 1);
    const auto b = static_cast<std::size_t>(p.prerequisite - 1);
    const std::string suffix = std::to_string(p.dependent) + "_" + std::to_string(p.prerequisite);
    if (p.kind == PrecedenceKind::requires_prerequisite) {
      model.rows.push_back({"c_prec_" + suffix, {{1.0, x_var(a)}, {-1.0, x_var(b)}}, RowSense::less_equal, 0.0});
    } else {
      model.rows.push_back({"c_conf_" + suffix, {{1.0, x_var(a)}, {1.0, x_var(b)}}, RowSense::less_equal, 1.0});
    }
  }

  for (const auto& [index, beta] : project.betas) {
    model.rows.push_back({"c_value_" + std::to_string(index),
                          delivered_terms(project, static_cast<std::size_t>(index - 1)),
                          RowSense::greater_equal, beta.to_double()});
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < types; ++t) {
        const double influence = influences[t](i, j);
        model.rows.push_back({"c_pen_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
                                  std::to_string(t + 1),
                              {{1.0, th_var(i, t)}, {influence, x_var(j)}},
                              RowSense::greater_equal,
                              (std::abs(influence) + influence) / 2.0});
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = std::to_string(i + 1);
    const std::string x = x_var(i);
    const std::string g = g_var(i);
    model.rows.push_back({"c_glink1_" + id, {{1.0, x}, {1.0, g}}, RowSense::greater_equal, 0.0});
    model.rows.push_back({"c_glink2_" + id, {{1.0, x}, {-1.0, g}}, RowSense::less_equal, 0.0});
    model.rows.push_back({"c_glink3_" + id, {{1.0, x}, {-1.0, g}}, RowSense::greater_equal, 0.0});
    model.rows.push_back({"c_glink4_" + id, {{1.0, x}, {1.0, g}}, RowSense::less_equal, 2.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < types; ++t) {
      const std::string id = std::to_string(i + 1) + "_" + std::to_string(t + 1);
      const std::string y = y_var(i, t);
      const std::string th = th_var(i, t);
      const std::string g = g_var(i);
      model.rows.push_back({"c_glink1_" + id, {{1.0, y}, {1.0, g}}, RowSense::greater_equal, 0.0});
      model.rows.push_back({"c_glink2_" + id, {{1.0, y}, {-1.0, g}}, RowSense::less_equal, 0.0});
      model.rows.push_back({"c_glink3_" + id, {{1.0, y}, {-1.0, th}, {-1.0, g}}, RowSense::greater_equal, -1.0});
      model.rows.push_back({"c_glink4_" + id, {{1.0, y}, {-1.0, th}, {1.0, g}}, RowSense::less_equal, 1.0});
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < types; ++t) model.bounds.push_back({y_var(i, t), 0.0, 1.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < types; ++t) model.bounds.push_back({th_var(i, t), 0.0, 1.0});
  for (std::size_t i = 0; i < n; ++i) model.binaries.push_back(x_var(i));
  for (std::size_t i = 0; i < n; ++i) model.binaries.push_back(g_var(i));
  return model;
}

namespace {

void write_expression(std::ostream& out, const std::vector<LinearTerm>& terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  constexpr std::size_t kTermsPerLine = 8;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
    const double c = terms[k].coefficient;
    if (k == 0) {
      out << (c < 0 ? " -" : "");
    } else {
      out << (c < 0 ? " -" : " +");
    }
    if (std::abs(c) != 1.0) out << ' ' << format_number(std::abs(c));
    out << ' ' << terms[k].variable;
  }
}

}  // namespace

std::string to_lp_text(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ release plan model\n";
  out << "Maximize\n obj:";
  write_expression(out, model.objective);
  out << "\nSubject To\n";
  for (const LinearRow& row : model.rows) {
    out << ' ' << row.name << ':';
    write_expression(out, row.terms);
    out << (row.sense == RowSense::less_equal ? " <= " : " >= ") << format_number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const VariableBound& b : model.bounds)
    out << ' ' << format_number(b.lower) << " <= " << b.variable << " <= " << format_number(b.upper) << '\n';
  out << "Binaries\n";
  for (const std::string& v : model.binaries) out << ' ' << v << '\n';
  out << "End\n";
  return out.str();
}

std::string export_lp(const Project& project, std::span<const InfluenceMatrix> influences) {
  return to_lp_text(build_ilp_model(project, influences));
}

VariableAssignment linearized_assignment(const Project& project,
                                         std::span<const InfluenceMatrix> influences,
                                         const Selection& selection) {
  VariableAssignment values;
  for (std::size_t i = 0; i < project.requirement_count(); ++i) {
    const double x = selection[i] ? 1.0 : 0.0;
    values[x_var(i)] = x;
    values[g_var(i)] = x;
    for (std::size_t t = 0; t < project.type_count(); ++t) {
      const double theta = penalty(influences, selection, i, t);
      values[th_var(i, t)] = theta;
      values[y_var(i, t)] = x * theta;
    }
  }
  return values;
}

namespace {

double evaluate_terms(const std::vector<LinearTerm>& terms, const VariableAssignment& values) {
  double sum = 0.0;
  for (const LinearTerm& term : terms) {
    auto it = values.find(term.variable);
    if (it != values.end()) sum += term.coefficient * it->second;
  }
  return sum;
}

}  // namespace

std::vector<std::string> violated_rows(const IlpModel& model, const VariableAssignment& values,
                                       double tolerance) {
  std::vector<std::string> out;
  for (const LinearRow& row : model.rows) {
    const double lhs = evaluate_terms(row.terms, values);
    const bool ok = row.sense == RowSense::less_equal ? lhs <= row.rhs + tolerance
                                                      : lhs >= row.rhs - tolerance;
    if (!ok) out.push_back(row.name);
  }
  for (const VariableBound& b : model.bounds) {
    auto it = values.find(b.variable);
    const double v = it == values.end() ? 0.0 : it->second;
    if (v < b.lower - tolerance || v > b.upper + tolerance) out.push_back(b.variable);
  }
  for (const std::string& name : model.binaries) {
    auto it = values.find(name);
    const double v = it == values.end() ? 0.0 : it->second;
    if (v != 0.0 && v != 1.0) out.push_back(name);
  }
  return out;
}

double objective_value(const IlpModel& model, const VariableAssignment& values) {
  return evaluate_terms(model.objective, values);
}

}  // namespace valueplan
