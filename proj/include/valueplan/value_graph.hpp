#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "valueplan/matrix.hpp"

namespace valueplan {

enum class Sign : std::uint8_t { positive, negative };

/// Serial composition of two dependency qualities: equal signs give a
/// positive result, mixed signs a negative one.
constexpr Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::positive : Sign::negative;
}

/// An explicit dependency carried by one edge. Strength is in (0, 1].
struct Dependency {
  double strength = 0.0;
  Sign sign = Sign::positive;

  bool operator==(const Dependency&) const = default;
};

/// Signed directed fuzzy graph over the requirements for one value type.
/// Node indices are zero-based; a missing edge means "no explicit dependency".
class TypedValueGraph {
 public:
  TypedValueGraph() = default;
  TypedValueGraph(int value_type, std::size_t nodes);

  int value_type() const { return value_type_; }
  std::size_t size() const { return nodes_; }

  const std::optional<Dependency>& edge(std::size_t from, std::size_t to) const;
  /// Throws std::out_of_range for unknown nodes and std::invalid_argument for
  /// self-edges.
  void set_edge(std::size_t from, std::size_t to, Dependency dependency);
  void clear_edge(std::size_t from, std::size_t to);
  std::size_t edge_count() const;

  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::size_t i = 0; i < nodes_; ++i)
      for (std::size_t j = 0; j < nodes_; ++j)
        if (const auto& e = edges_[i * nodes_ + j]) fn(i, j, *e);
  }

  bool operator==(const TypedValueGraph&) const = default;

 private:
  int value_type_ = 1;
  std::size_t nodes_ = 0;
  std::vector<std::optional<Dependency>> edges_;
};

/// Sequence of node indices r(0), ..., r(k) with k >= 1.
using DependencyPath = std::vector<std::size_t>;

class InvalidPathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Strongest positive and strongest negative walk strengths between every
/// ordered pair of nodes. Diagonal entries describe cycles through a node.
struct SignedClosure {
  Matrix<double> positive;
  Matrix<double> negative;

  bool operator==(const SignedClosure&) const = default;
};

/// Entry (i, j) is how node j influences the value of node i, in [-1, 1].
struct InfluenceMatrix {
  Matrix<double> values;

  std::size_t size() const { return values.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
  bool operator==(const InfluenceMatrix&) const = default;
};

/// Weakest edge strength along the path.
double path_strength(const TypedValueGraph& graph, std::span<const std::size_t> path);

/// Sign product along the path: negative iff it has an odd number of
/// negative edges.
Sign path_quality(const TypedValueGraph& graph, std::span<const std::size_t> path);

/// All-pairs max-min closure (paths of length >= 1) of a square weight matrix
/// where 0 means "no edge". Floyd-Warshall in the (max, min) semiring.
Matrix<double> maxmin_closure(Matrix<double> weights);

/// Closure over walks of each quality. Runs max-min Floyd-Warshall on the
/// 2n-node graph whose nodes pair a requirement with the accumulated sign.
SignedClosure signed_closure(const TypedValueGraph& graph);

/// Exhaustive walk enumeration; for testing only. Refuses graphs with more
/// than kOracleClosureLimit nodes.
inline constexpr std::size_t kOracleClosureLimit = 10;
SignedClosure oracle_closure(const TypedValueGraph& graph);

InfluenceMatrix influence_matrix(const SignedClosure& closure);

}  // namespace valueplan
