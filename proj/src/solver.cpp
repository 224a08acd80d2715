#include <algorithm>
#include <cmath>
#include <numeric>

#include "valueplan/planner.hpp"

namespace valueplan {

namespace {

// Instance data rearranged for the search.
struct SearchContext {
  const Project& project;
  std::span<const InfluenceMatrix> influences;
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> prerequisites;  // k requires each of these
  std::vector<std::vector<std::size_t>> dependents;     // each of these requires k
  std::vector<std::vector<std::size_t>> conflicts;
  std::vector<double> economic;                         // E(v_i,1)
  std::vector<double> cost;
  std::vector<std::size_t> ratio_order;                 // best value per cost first
  std::vector<std::pair<std::size_t, Decimal>> bounds;  // (type position, beta)
  double objective_tolerance = 0.0;
  std::vector<double> bound_tolerance;

  SearchContext(const Project& p, std::span<const InfluenceMatrix> inf)
      : project(p), influences(inf), n(p.requirement_count()), prerequisites(n), dependents(n),
        conflicts(n), economic(n, 0.0), cost(n, 0.0) {
    for (const PrecedencePair& pair : p.precedences) {
      const auto a = static_cast<std::size_t>(pair.dependent - 1);
      const auto b = static_cast<std::size_t>(pair.prerequisite - 1);
      if (pair.kind == PrecedenceKind::requires_prerequisite) {
        prerequisites[a].push_back(b);
        dependents[b].push_back(a);
      } else {
        conflicts[a].push_back(b);
        conflicts[b].push_back(a);
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (p.type_count() > 0) economic[i] = p.requirements[i].expected_values[0].to_double();
      cost[i] = p.requirements[i].cost.to_double();
      total += economic[i];
    }
    ratio_order.resize(n);
    std::iota(ratio_order.begin(), ratio_order.end(), std::size_t{0});
    // Zero-cost items always fit and go first; the rest by value per cost.
    auto paid = std::stable_partition(ratio_order.begin(), ratio_order.end(),
                                      [&](std::size_t i) { return cost[i] == 0.0; });
    std::stable_sort(paid, ratio_order.end(), [&](std::size_t a, std::size_t b) {
      return economic[a] / cost[a] > economic[b] / cost[b];
    });
    objective_tolerance = 1e-9 * (1.0 + total);

    for (const auto& [index, beta] : p.betas) {
      const auto t = static_cast<std::size_t>(index - 1);
      double type_total = 0.0;
      for (const Requirement& r : p.requirements) type_total += r.expected_values[t].to_double();
      bounds.emplace_back(t, beta);
      bound_tolerance.push_back(1e-9 * (1.0 + type_total + beta.to_double()));
    }
  }

  // Penalty of requirement i for type t counting only decided influencers.
  double decided_penalty(const PartialSelection& a, std::size_t i, std::size_t t) const {
    const InfluenceMatrix& m = influences[t];
    double theta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || a[j] < 0) continue;
      theta = std::max(theta, penalty_term(m(i, j), a[j] == 1));
    }
    return theta;
  }

  double upper_bound(const PartialSelection& a, Decimal spent) const {
    Decimal fixed_value;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != 1) continue;
      fixed_value += project.requirements[i].expected_values[0];
      if (economic[i] != 0.0) loss += decided_penalty(a, i, 0) * economic[i];
    }
    double capacity = (project.budget - spent).to_double();
    double relaxed = 0.0;
    for (std::size_t i : ratio_order) {
      if (a[i] != -1 || economic[i] == 0.0) continue;
      if (cost[i] <= capacity) {
        relaxed += economic[i];
        capacity -= cost[i];
      } else {
        if (capacity > 0.0) relaxed += economic[i] * capacity / cost[i];
        break;
      }
    }
    return fixed_value.to_double() - loss + relaxed;
  }

  // False when some value bound cannot be met even if every undecided
  // requirement were selected without penalty.
  bool bounds_reachable(const PartialSelection& a) const {
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      const auto [t, beta] = bounds[k];
      Decimal optimistic;
      double loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        const Decimal e = project.requirements[i].expected_values[t];
        optimistic += e;
        if (a[i] == 1 && e != Decimal{}) loss += decided_penalty(a, i, t) * e.to_double();
      }
      if ((optimistic - beta).to_double() - loss < -bound_tolerance[k]) return false;
    }
    return true;
  }

  // Fixes x_var = value and everything the precedence pairs imply. Returns
  // false on contradiction or budget overrun.
  bool assign(PartialSelection& a, Decimal& spent, std::size_t var, std::int8_t value) const {
    std::vector<std::pair<std::size_t, std::int8_t>> pending{{var, value}};
    while (!pending.empty()) {
      auto [k, v] = pending.back();
      pending.pop_back();
      if (a[k] == v) continue;
      if (a[k] != -1) return false;
      a[k] = v;
      if (v == 1) {
        spent += project.requirements[k].cost;
        if (spent > project.budget) return false;
        for (std::size_t j : prerequisites[k]) pending.emplace_back(j, 1);
        for (std::size_t j : conflicts[k]) pending.emplace_back(j, 0);
      } else {
        for (std::size_t j : dependents[k]) pending.emplace_back(j, 0);
      }
    }
    return true;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const SearchContext& ctx, const SolveOptions& options)
      : ctx_(ctx), options_(options),
        deadline_(std::chrono::steady_clock::now() + options.timeout) {}

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    PartialSelection root(ctx_.n, -1);
    explore(root, Decimal{});

    SolveReport report;
    report.nodes_explored = nodes_;
    if (timed_out_) {
      report.status = has_incumbent_ ? SolveStatus::timeout_with_incumbent
                                     : SolveStatus::timeout_no_incumbent;
    } else {
      report.status = has_incumbent_ ? SolveStatus::optimal : SolveStatus::infeasible;
    }
    report.plan = has_incumbent_
                      ? std::move(incumbent_)
                      : evaluate_plan(ctx_.project, ctx_.influences, Selection(ctx_.n, 0));
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
  }

 private:
  void explore(const PartialSelection& a, Decimal spent) {
    if (timed_out_) return;
    ++nodes_;
    if ((nodes_ & 0xFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (has_incumbent_ &&
        ctx_.upper_bound(a, spent) + ctx_.objective_tolerance < incumbent_.objective) {
      return;
    }
    if (!ctx_.bounds_reachable(a)) return;

    const auto next = std::find(a.begin(), a.end(), std::int8_t{-1});
    if (next == a.end()) {
      visit_leaf(a);
      return;
    }
    const auto var = static_cast<std::size_t>(next - a.begin());
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      PartialSelection child = a;
      Decimal child_spent = spent;
      if (ctx_.assign(child, child_spent, var, value)) explore(child, child_spent);
      if (timed_out_) return;
    }
  }

  void visit_leaf(const PartialSelection& a) {
    Selection x(a.begin(), a.end());
    if (!check_feasibility(ctx_.project, ctx_.influences, x).empty()) return;
    ReleasePlan plan = evaluate_plan(ctx_.project, ctx_.influences, x);
    if (has_incumbent_ && !(plan.objective > incumbent_.objective)) return;
    incumbent_ = std::move(plan);
    has_incumbent_ = true;
    if (options_.incumbent_callback) options_.incumbent_callback(incumbent_);
  }

  const SearchContext& ctx_;
  const SolveOptions& options_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool has_incumbent_ = false;
  ReleasePlan incumbent_;
};

}  // namespace

SolveReport solve_exact(const Project& project, std::span<const InfluenceMatrix> influences,
                        const SolveOptions& options) {
  SearchContext ctx(project, influences);
  return BranchAndBound(ctx, options).run();
}

double objective_upper_bound(const Project& project, std::span<const InfluenceMatrix> influences,
                             const PartialSelection& partial) {
  SearchContext ctx(project, influences);
  Decimal spent;
  for (std::size_t i = 0; i < partial.size(); ++i)
    if (partial[i] == 1) spent += project.requirements[i].cost;
  return ctx.upper_bound(partial, spent);
}

}  // namespace valueplan
