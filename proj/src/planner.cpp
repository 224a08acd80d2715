#include <algorithm>
#include <stdexcept>

#include "valueplan/planner.hpp"

namespace valueplan {

std::vector<InfluenceMatrix> compute_influences(const Project& project) {
  std::vector<InfluenceMatrix> out;
  out.reserve(project.graphs.size());
  for (const TypedValueGraph& g : project.graphs) out.push_back(influence_matrix(signed_closure(g)));
  return out;
}

double penalty(std::span<const InfluenceMatrix> influences, const Selection& selection,
               std::size_t i, std::size_t type) {
  const InfluenceMatrix& m = influences[type];
  double theta = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j == i) continue;
    theta = std::max(theta, penalty_term(m(i, j), selection[j] != 0));
  }
  return theta;
}

namespace {

// Exact sum of expected values over the selected requirements, per type.
std::vector<Decimal> selected_value_sums(const Project& project, const Selection& selection) {
  std::vector<Decimal> sums(project.type_count());
  for (std::size_t i = 0; i < project.requirement_count(); ++i) {
    if (!selection[i]) continue;
    const auto& ev = project.requirements[i].expected_values;
    for (std::size_t t = 0; t < sums.size(); ++t) sums[t] += ev[t];
  }
  return sums;
}

// Sum over selected i of theta_i,t * E(v_i,t), per type.
std::vector<double> penalty_losses(const Project& project, const Matrix<double>& penalties,
                                   const Selection& selection) {
  std::vector<double> losses(project.type_count(), 0.0);
  for (std::size_t i = 0; i < project.requirement_count(); ++i) {
    if (!selection[i]) continue;
    const auto& ev = project.requirements[i].expected_values;
    for (std::size_t t = 0; t < losses.size(); ++t) losses[t] += penalties(i, t) * ev[t].to_double();
  }
  return losses;
}

Matrix<double> penalty_matrix(const Project& project, std::span<const InfluenceMatrix> influences,
                              const Selection& selection) {
  Matrix<double> theta(project.requirement_count(), project.type_count(), 0.0);
  for (std::size_t i = 0; i < theta.rows(); ++i)
    for (std::size_t t = 0; t < theta.cols(); ++t) theta(i, t) = penalty(influences, selection, i, t);
  return theta;
}

void require_selection_size(const Project& project, const Selection& selection) {
  if (selection.size() != project.requirement_count()) {
    throw std::invalid_argument("selection length does not match the requirement count");
  }
}

}  // namespace

ReleasePlan evaluate_plan(const Project& project, std::span<const InfluenceMatrix> influences,
                          const Selection& selection) {
  require_selection_size(project, selection);
  const std::size_t n = project.requirement_count();
  const std::size_t types = project.type_count();

  ReleasePlan plan;
  plan.selection = selection;
  plan.penalties = penalty_matrix(project, influences, selection);
  plan.penalized = Matrix<double>(n, types, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (selection[i])
      for (std::size_t t = 0; t < types; ++t) plan.penalized(i, t) = plan.penalties(i, t);

  const auto sums = selected_value_sums(project, selection);
  const auto losses = penalty_losses(project, plan.penalties, selection);
  plan.delivered.resize(types);
  for (std::size_t t = 0; t < types; ++t) plan.delivered[t] = sums[t].to_double() - losses[t];
  plan.objective = types > 0 ? plan.delivered[0] : 0.0;
  return plan;
}

std::vector<ConstraintViolation> check_feasibility(const Project& project,
                                                   std::span<const InfluenceMatrix> influences,
                                                   const Selection& selection) {
  require_selection_size(project, selection);
  std::vector<ConstraintViolation> out;

  Decimal spent;
  for (std::size_t i = 0; i < project.requirement_count(); ++i)
    if (selection[i]) spent += project.requirements[i].cost;
  if (spent > project.budget) {
    out.push_back({ConstraintKind::budget, "c_budget", (project.budget - spent).to_double(), {}});
  }

  for (const PrecedencePair& p : project.precedences) {
    const bool dependent = selection[p.dependent - 1] != 0;
    const bool other = selection[p.prerequisite - 1] != 0;
    const std::string suffix = std::to_string(p.dependent) + "_" + std::to_string(p.prerequisite);
    if (p.kind == PrecedenceKind::requires_prerequisite) {
      if (dependent && !other)
        out.push_back({ConstraintKind::precedence, "c_prec_" + suffix, -1.0, {p.dependent, p.prerequisite}});
    } else if (dependent && other) {
      out.push_back({ConstraintKind::conflict, "c_conf_" + suffix, -1.0, {p.dependent, p.prerequisite}});
    }
  }

  if (!project.betas.empty()) {
    const Matrix<double> theta = penalty_matrix(project, influences, selection);
    const auto sums = selected_value_sums(project, selection);
    const auto losses = penalty_losses(project, theta, selection);
    for (const auto& [index, beta] : project.betas) {
      const auto t = static_cast<std::size_t>(index - 1);
      const double slack = (sums[t] - beta).to_double() - losses[t];
      if (slack < 0.0) {
        out.push_back({ConstraintKind::value_bound, "c_value_" + std::to_string(index), slack, {index}});
      }
    }
  }
  return out;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::timeout_with_incumbent: return "timeout_with_incumbent";
    case SolveStatus::timeout_no_incumbent: return "timeout_no_incumbent";
  }
  return "unknown";
}

SolveReport oracle_solve(const Project& project, std::span<const InfluenceMatrix> influences) {
  const std::size_t n = project.requirement_count();
  if (n > kOracleSolveLimit) {
    throw OracleLimitError("exhaustive enumeration refuses more than " +
                           std::to_string(kOracleSolveLimit) + " requirements");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  bool found = false;
  Selection x(n, 0);
  // Counting in reverse bit order (requirement 1 is the most significant bit)
  // visits selections lexicographically, so strict improvement keeps the
  // smallest optimum.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (code >> (n - 1 - i)) & 1U;
    ++report.nodes_explored;
    if (!check_feasibility(project, influences, x).empty()) continue;
    ReleasePlan plan = evaluate_plan(project, influences, x);
    if (!found || plan.objective > report.plan.objective) {
      report.plan = std::move(plan);
      found = true;
    }
  }
  if (found) {
    report.status = SolveStatus::optimal;
  } else {
    report.status = SolveStatus::infeasible;
    report.plan = evaluate_plan(project, influences, Selection(n, 0));
  }
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace valueplan
