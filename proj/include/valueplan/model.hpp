#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "valueplan/decimal.hpp"
#include "valueplan/value_graph.hpp"

namespace valueplan {

/// Index 1 is always the economic type.
struct ValueType {
  int index = 1;
  std::string name;

  bool operator==(const ValueType&) const = default;
};

struct Requirement {
  int id = 1;
  std::string label;
  Decimal cost;
  /// One entry per value type, in value-type order.
  std::vector<Decimal> expected_values;

  bool operator==(const Requirement&) const = default;
};

enum class PrecedenceKind { requires_prerequisite, conflicts_with };

/// `dependent` requires (or conflicts with) `prerequisite`. Ids are 1-based.
struct PrecedencePair {
  int dependent = 0;
  int prerequisite = 0;
  PrecedenceKind kind = PrecedenceKind::requires_prerequisite;

  bool operator==(const PrecedencePair&) const = default;
};

/// A release-planning instance. Requirement ids are dense 1..n and stored in
/// id order, so requirement id k lives at index k - 1 (likewise for value
/// types and graphs).
struct Project {
  std::vector<ValueType> value_types;
  std::vector<Requirement> requirements;
  std::vector<TypedValueGraph> graphs;
  std::vector<PrecedencePair> precedences;
  Decimal budget;
  /// Lower bounds on delivered value keyed by value-type index (never 1).
  std::map<int, Decimal> betas;

  std::size_t requirement_count() const { return requirements.size(); }
  std::size_t type_count() const { return value_types.size(); }

  bool operator==(const Project&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;
  std::vector<int> ids;

  std::string message() const;
  bool operator==(const Violation&) const = default;
};

/// Structural checks on a project. Returns every violation found; an empty
/// result means all downstream operations accept the project.
std::vector<Violation> validate_project(const Project& project);

/// Default value-type catalog: Wealth followed by the Schwartz values.
const std::vector<ValueType>& default_value_types();

}  // namespace valueplan
