#include "valueplan/model.hpp"

#include <set>
#include <utility>

namespace valueplan {

std::string Violation::message() const {
  std::string out = field + ": " + rule;
  if (!ids.empty()) {
    out += " [";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (k) out += ", ";
      out += std::to_string(ids[k]);
    }
    out += "]";
  }
  return out;
}

std::vector<Violation> validate_project(const Project& project) {
  std::vector<Violation> out;
  const auto n = static_cast<int>(project.requirements.size());
  const auto types = static_cast<int>(project.value_types.size());

  if (types < 1) out.push_back({"value_types", "at least one value type is required", {}});
  for (int k = 0; k < types; ++k) {
    if (project.value_types[k].index != k + 1) {
      out.push_back({"value_types", "indices must be contiguous and start at 1",
                     {project.value_types[k].index}});
    }
  }

  for (int k = 0; k < n; ++k) {
    const Requirement& r = project.requirements[k];
    if (r.id != k + 1) out.push_back({"requirements", "ids must be dense 1..n in order", {r.id}});
    if (r.cost < Decimal{}) out.push_back({"requirements.cost", "cost must be nonnegative", {r.id}});
    if (static_cast<int>(r.expected_values.size()) != types) {
      out.push_back({"requirements.expected_values",
                     "must have exactly one entry per value type (" + std::to_string(types) + ")",
                     {r.id}});
    }
    for (Decimal v : r.expected_values) {
      if (v < Decimal{}) {
        out.push_back({"requirements.expected_values", "expected values must be nonnegative", {r.id}});
        break;
      }
    }
  }

  if (static_cast<int>(project.graphs.size()) != types) {
    out.push_back({"graphs", "exactly one graph per value type is required",
                   {static_cast<int>(project.graphs.size())}});
  }
  for (std::size_t k = 0; k < project.graphs.size(); ++k) {
    const TypedValueGraph& g = project.graphs[k];
    if (g.value_type() != static_cast<int>(k) + 1) {
      out.push_back({"graphs", "graphs must be ordered by value type", {g.value_type()}});
    }
    if (static_cast<int>(g.size()) != n) {
      out.push_back({"graphs", "node set must equal the requirement id set", {g.value_type()}});
    }
    g.for_each_edge([&](std::size_t i, std::size_t j, const Dependency& d) {
      if (!(d.strength > 0.0 && d.strength <= 1.0)) {
        out.push_back({"graphs.edges", "strength must be in (0, 1]",
                       {g.value_type(), static_cast<int>(i) + 1, static_cast<int>(j) + 1}});
      }
    });
  }

  std::set<std::pair<int, int>> requires_pairs;
  std::set<std::pair<int, int>> conflicts_pairs;
  for (const PrecedencePair& p : project.precedences) {
    if (p.dependent < 1 || p.dependent > n || p.prerequisite < 1 || p.prerequisite > n) {
      out.push_back({"precedences", "pair references an unknown requirement", {p.dependent, p.prerequisite}});
      continue;
    }
    if (p.dependent == p.prerequisite) {
      out.push_back({"precedences", "a requirement cannot depend on itself", {p.dependent, p.prerequisite}});
      continue;
    }
    auto& bucket = p.kind == PrecedenceKind::requires_prerequisite ? requires_pairs : conflicts_pairs;
    bucket.emplace(p.dependent, p.prerequisite);
  }
  for (const auto& [a, b] : requires_pairs) {
    if (conflicts_pairs.contains({a, b})) {
      out.push_back({"precedences", "pair is listed as both requires and conflicts", {a, b}});
    }
  }

  if (project.budget < Decimal{}) out.push_back({"budget", "budget must be nonnegative", {}});
  for (const auto& [t, beta] : project.betas) {
    if (t == 1) {
      out.push_back({"betas", "the economic type is optimized, not bounded", {t}});
    } else if (t < 2 || t > types) {
      out.push_back({"betas", "bound references an unknown value type", {t}});
    }
    if (beta < Decimal{}) out.push_back({"betas", "bounds must be nonnegative", {t}});
  }
  return out;
}

}  // namespace valueplan
