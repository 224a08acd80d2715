#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "valueplan/matrix.hpp"
#include "valueplan/model.hpp"
#include "valueplan/value_graph.hpp"

namespace valueplan {

/// x_i in {0, 1}, indexed by requirement position (id - 1).
using Selection = std::vector<std::uint8_t>;

/// One influence matrix per value type, in value-type order.
std::vector<InfluenceMatrix> compute_influences(const Project& project);

/// Contribution of requirement j to the penalty of requirement i:
/// (|I| + (1 - 2 x_j) I) / 2. Ignoring a positive influencer or selecting a
/// negative one costs |I|; the other two cases cost nothing.
inline double penalty_term(double influence, bool influencer_selected) {
  const double sign_factor = influencer_selected ? -1.0 : 1.0;
  return (std::abs(influence) + sign_factor * influence) / 2.0;
}

/// Penalty of the type-`type` value of requirement `i` (both zero-based):
/// the largest penalty term over j != i, or 0 when there is none.
double penalty(std::span<const InfluenceMatrix> influences, const Selection& selection,
               std::size_t i, std::size_t type);

struct ReleasePlan {
  Selection selection;
  /// n x T, theta from the penalty expression (also reported for unselected rows).
  Matrix<double> penalties;
  /// n x T, y = x * theta.
  Matrix<double> penalized;
  /// Per type: sum over selected i of (1 - theta) * E(v_i,t).
  std::vector<double> delivered;
  /// delivered[0], the economic value.
  double objective = 0.0;
};

/// Everything in the model is determined by the selection; this computes it.
ReleasePlan evaluate_plan(const Project& project, std::span<const InfluenceMatrix> influences,
                          const Selection& selection);

enum class ConstraintKind { budget, precedence, conflict, value_bound };

struct ConstraintViolation {
  ConstraintKind kind;
  /// Row name as emitted by export_lp, e.g. "c_budget" or "c_value_3".
  std::string row;
  /// Signed slack of the row; negative means violated by that amount.
  double slack = 0.0;
  std::vector<int> ids;
};

std::vector<ConstraintViolation> check_feasibility(const Project& project,
                                                   std::span<const InfluenceMatrix> influences,
                                                   const Selection& selection);

enum class SolveStatus { optimal, infeasible, timeout_with_incumbent, timeout_no_incumbent };

std::string to_string(SolveStatus status);

struct SolveOptions {
  std::chrono::milliseconds timeout{60'000};
  /// Called with every improving feasible plan.
  std::function<void(const ReleasePlan&)> incumbent_callback;
};

struct SolveReport {
  ReleasePlan plan;
  SolveStatus status = SolveStatus::infeasible;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds wall_time{0};
};

/// Depth-first branch-and-bound over the selection vector. Among equally good
/// plans the lexicographically smallest selection wins.
SolveReport solve_exact(const Project& project, std::span<const InfluenceMatrix> influences,
                        const SolveOptions& options = {});

/// Enumerates all 2^n selections. Refuses n > kOracleSolveLimit.
inline constexpr std::size_t kOracleSolveLimit = 15;
SolveReport oracle_solve(const Project& project, std::span<const InfluenceMatrix> influences);

/// Partial assignment used by the search: -1 undecided, 0 excluded, 1 selected.
using PartialSelection = std::vector<std::int8_t>;

/// Upper bound on the objective of every completion of `partial`: the exact
/// value of the selected part less the penalties already forced by decided
/// influencers, plus a fractional knapsack over the undecided requirements at
/// full value. Exposed for testing the search's pruning rule.
double objective_upper_bound(const Project& project, std::span<const InfluenceMatrix> influences,
                             const PartialSelection& partial);

}  // namespace valueplan
