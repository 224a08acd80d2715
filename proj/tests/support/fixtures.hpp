#pragma once

// Test-only helpers: instance builders, random generators and oracles that do
// not share code paths with the library routines they check.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "valueplan/model.hpp"
#include "valueplan/planner.hpp"
#include "valueplan/value_graph.hpp"

namespace fixtures {

using valueplan::Decimal;
using valueplan::Dependency;
using valueplan::Project;
using valueplan::Sign;
using valueplan::TypedValueGraph;

inline Decimal dec(const char* text) { return *Decimal::parse(text); }
inline Decimal dec(std::int64_t whole) { return Decimal::from_integer(whole); }

/// Project with `types` value types, empty graphs, no precedences.
/// values[i] lists E(v_i,t) for t = 1..types.
inline Project make_project(const std::vector<std::int64_t>& costs,
                            const std::vector<std::vector<std::int64_t>>& values, std::int64_t budget,
                            std::size_t types = 1) {
  Project p;
  for (std::size_t t = 0; t < types; ++t)
    p.value_types.push_back({static_cast<int>(t) + 1, t == 0 ? "Wealth" : "Value " + std::to_string(t + 1)});
  for (std::size_t i = 0; i < costs.size(); ++i) {
    valueplan::Requirement r;
    r.id = static_cast<int>(i) + 1;
    r.label = "R" + std::to_string(i + 1);
    r.cost = dec(costs[i]);
    for (std::int64_t v : values[i]) r.expected_values.push_back(dec(v));
    p.requirements.push_back(std::move(r));
  }
  for (std::size_t t = 0; t < types; ++t) p.graphs.emplace_back(static_cast<int>(t) + 1, costs.size());
  p.budget = dec(budget);
  return p;
}

/// The three-requirement instance: costs (5, 4, 3), economic values (10, 8, 6).
inline Project demo_project(std::int64_t budget = 8) {
  return make_project({5, 4, 3}, {{10}, {8}, {6}}, budget);
}

/// Edges r1->r2 (+, 0.6), r2->r3 (-, 0.4), r1->r3 (+, 0.3).
inline TypedValueGraph three_edge_graph() {
  TypedValueGraph g(1, 3);
  g.set_edge(0, 1, {0.6, Sign::positive});
  g.set_edge(1, 2, {0.4, Sign::negative});
  g.set_edge(0, 2, {0.3, Sign::positive});
  return g;
}

/// Edges r1->r2 (+, 0.9), r2->r3 (+, 0.8), r3->r2 (-, 0.7).
inline TypedValueGraph sign_flip_cycle_graph() {
  TypedValueGraph g(1, 3);
  g.set_edge(0, 1, {0.9, Sign::positive});
  g.set_edge(1, 2, {0.8, Sign::positive});
  g.set_edge(2, 1, {0.7, Sign::negative});
  return g;
}

/// Strength drawn from {0.1, ..., 1.0}.
inline double tenth_strength(std::mt19937_64& rng) {
  return static_cast<double>(std::uniform_int_distribution<int>(1, 10)(rng)) / 10.0;
}

inline TypedValueGraph random_graph(std::mt19937_64& rng, std::size_t n, double density, int type = 1) {
  TypedValueGraph g(type, n);
  std::bernoulli_distribution has_edge(density);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && has_edge(rng))
        g.set_edge(i, j, {tenth_strength(rng), negative(rng) ? Sign::negative : Sign::positive});
  return g;
}

struct RandomInstanceShape {
  std::size_t min_n = 1;
  std::size_t max_n = 12;
  std::size_t max_types = 4;
  double edge_density = 0.25;
  bool precedences = true;
  bool betas = true;
  bool fractional_values = false;
};

/// Random planning instance. Integer costs and values unless
/// fractional_values is set (then quarters).
inline Project random_project(std::mt19937_64& rng, const RandomInstanceShape& shape) {
  std::uniform_int_distribution<std::size_t> n_dist(shape.min_n, shape.max_n);
  std::uniform_int_distribution<std::size_t> t_dist(1, shape.max_types);
  const std::size_t n = n_dist(rng);
  const std::size_t types = t_dist(rng);
  std::uniform_int_distribution<std::int64_t> cost_dist(0, 12);
  std::uniform_int_distribution<std::int64_t> value_dist(0, 20);
  auto amount = [&](std::uniform_int_distribution<std::int64_t>& d) {
    if (!shape.fractional_values) return Decimal::from_integer(d(rng));
    return Decimal::from_units(d(rng) * Decimal::kScale + (d(rng) % 4) * (Decimal::kScale / 4));
  };

  Project p;
  for (std::size_t t = 0; t < types; ++t)
    p.value_types.push_back({static_cast<int>(t) + 1, t == 0 ? "Wealth" : "Value " + std::to_string(t + 1)});
  Decimal total_cost;
  std::vector<Decimal> type_totals(types);
  for (std::size_t i = 0; i < n; ++i) {
    valueplan::Requirement r;
    r.id = static_cast<int>(i) + 1;
    r.label = "R" + std::to_string(i + 1);
    r.cost = amount(cost_dist);
    total_cost += r.cost;
    for (std::size_t t = 0; t < types; ++t) {
      r.expected_values.push_back(amount(value_dist));
      type_totals[t] += r.expected_values.back();
    }
    p.requirements.push_back(std::move(r));
  }
  for (std::size_t t = 0; t < types; ++t)
    p.graphs.push_back(random_graph(rng, n, shape.edge_density, static_cast<int>(t) + 1));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  p.budget = Decimal::from_units(static_cast<std::int64_t>(
      std::floor(unit(rng) * static_cast<double>(total_cost.scaled()) / Decimal::kScale)) * Decimal::kScale);

  if (shape.precedences && n >= 2) {
    std::uniform_int_distribution<int> id(1, static_cast<int>(n));
    std::set<std::pair<int, int>> used;
    const int count = std::uniform_int_distribution<int>(0, static_cast<int>(n) / 2)(rng);
    for (int k = 0; k < count; ++k) {
      int a = id(rng);
      int b = id(rng);
      if (a == b || !used.emplace(a, b).second) continue;
      p.precedences.push_back({a, b, unit(rng) < 0.6 ? valueplan::PrecedenceKind::requires_prerequisite
                                                     : valueplan::PrecedenceKind::conflicts_with});
    }
    std::sort(p.precedences.begin(), p.precedences.end(), [](const auto& x, const auto& y) {
      return std::tie(x.dependent, x.prerequisite, x.kind) < std::tie(y.dependent, y.prerequisite, y.kind);
    });
  }
  if (shape.betas) {
    for (std::size_t t = 1; t < types; ++t) {
      if (unit(rng) < 0.3) continue;
      // Mostly reachable bounds, occasionally beyond the total.
      const double fraction = unit(rng) < 0.1 ? 1.2 : 0.45 * unit(rng);
      p.betas[static_cast<int>(t) + 1] = Decimal::from_integer(static_cast<std::int64_t>(
          std::floor(fraction * type_totals[t].to_double())));
    }
  }
  return p;
}

// Project with decimal amounts, odd labels and strengths beyond tenths.
inline Project random_document_project(std::mt19937_64& rng) {
  RandomInstanceShape shape;
  shape.min_n = 0;
  shape.max_n = 9;
  shape.max_types = 5;
  shape.edge_density = 0.3;
  shape.fractional_values = std::bernoulli_distribution(0.5)(rng);
  Project p = random_project(rng, shape);
  const std::vector<std::string> labels{"plain", "with \"quotes\"", "tab\there", "ünïcødé", "", "a/b\\c"};
  for (auto& r : p.requirements) r.label = labels[rng() % labels.size()];
  for (auto& g : p.graphs) {
    g.for_each_edge([&](std::size_t i, std::size_t j, const Dependency& d) {
      if (std::bernoulli_distribution(0.3)(rng)) {
        const auto micro = std::uniform_int_distribution<std::int64_t>(1, Decimal::kScale)(rng);
        g.set_edge(i, j, {Decimal::from_units(micro).to_double(), d.sign});
      }
    });
  }
  p.budget = Decimal::from_units(std::uniform_int_distribution<std::int64_t>(0, 50'000'000)(rng));
  return p;
}

/// 0/1 knapsack optimum by dynamic programming over integer capacities.
/// Requires integer costs, values and budget.
inline std::int64_t knapsack_dp(const Project& p) {
  const auto capacity = static_cast<std::size_t>(p.budget.scaled() / Decimal::kScale);
  std::vector<std::int64_t> best(capacity + 1, 0);
  for (const auto& r : p.requirements) {
    const auto w = static_cast<std::size_t>(r.cost.scaled() / Decimal::kScale);
    const std::int64_t v = r.expected_values[0].scaled() / Decimal::kScale;
    if (w > capacity) continue;
    for (std::size_t c = capacity + 1; c-- > w;) best[c] = std::max(best[c], best[c - w] + v);
  }
  return best[capacity];
}

/// Minimal CPLEX-LP reader for the files the exporter writes.
struct ParsedLp {
  struct Row {
    std::map<std::string, double> coefficients;
    std::string sense;
    double rhs = 0.0;
  };
  std::map<std::string, double> objective;
  std::vector<std::pair<std::string, Row>> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::vector<std::string> binaries;

  std::size_t count(const std::string& prefix) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const auto& r) {
      return r.first.rfind(prefix, 0) == 0;
    }));
  }
};

inline std::vector<std::string> lp_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    std::istringstream words(line);
    std::string w;
    while (words >> w) out.push_back(w);
    out.push_back("\n");
  }
  return out;
}

inline ParsedLp parse_lp(const std::string& text) {
  ParsedLp lp;
  const auto tokens = lp_tokens(text);
  std::string section;
  std::string current;     // current row name
  ParsedLp::Row row;
  double pending_sign = 1.0;
  double pending_coef = 1.0;
  bool have_coef = false;
  bool in_rhs = false;

  auto flush = [&] {
    if (current.empty()) return;
    if (current == "obj") {
      lp.objective = row.coefficients;
    } else {
      lp.rows.emplace_back(current, row);
    }
    current.clear();
    row = {};
  };

  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const std::string& tok = tokens[k];
    if (tok == "Maximize" || tok == "Subject" || tok == "Bounds" || tok == "Binaries" || tok == "End") {
      flush();
      section = tok;
      if (tok == "Subject") ++k;  // "To"
      continue;
    }
    if (tok == "\n") continue;
    if (section == "Maximize" || section == "Subject") {
      if (tok.back() == ':') {
        flush();
        current = tok.substr(0, tok.size() - 1);
        pending_sign = 1.0;
        have_coef = false;
        in_rhs = false;
      } else if (tok == "+") {
        pending_sign = 1.0;
      } else if (tok == "-") {
        pending_sign = -1.0;
      } else if (tok == "<=" || tok == ">=" || tok == "=") {
        row.sense = tok;
        in_rhs = true;
      } else if (in_rhs) {
        row.rhs = std::stod(tok);
      } else if (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.') {
        pending_coef = std::stod(tok);
        have_coef = true;
      } else {
        row.coefficients[tok] += pending_sign * (have_coef ? pending_coef : 1.0);
        pending_sign = 1.0;
        have_coef = false;
      }
    } else if (section == "Bounds") {
      // lower <= name <= upper
      const double lower = std::stod(tok);
      const std::string name = tokens[k + 2];
      const double upper = std::stod(tokens[k + 4]);
      lp.bounds[name] = {lower, upper};
      k += 4;
    } else if (section == "Binaries") {
      lp.binaries.push_back(tok);
    }
  }
  flush();
  return lp;
}

inline double lp_lhs(const std::map<std::string, double>& coefficients,
                     const std::map<std::string, double>& values) {
  double sum = 0.0;
  for (const auto& [name, c] : coefficients) sum += c * values.at(name);
  return sum;
}

}  // namespace fixtures

#include <fstream>

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(VALUEPLAN_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
