#include "valueplan/value_graph.hpp"

#include <algorithm>
#include <string>

namespace valueplan {

TypedValueGraph::TypedValueGraph(int value_type, std::size_t nodes)
    : value_type_(value_type), nodes_(nodes), edges_(nodes * nodes) {}

const std::optional<Dependency>& TypedValueGraph::edge(std::size_t from, std::size_t to) const {
  if (from >= nodes_ || to >= nodes_) throw std::out_of_range("edge endpoint out of range");
  return edges_[from * nodes_ + to];
}

void TypedValueGraph::set_edge(std::size_t from, std::size_t to, Dependency dependency) {
  if (from >= nodes_ || to >= nodes_) throw std::out_of_range("edge endpoint out of range");
  if (from == to) throw std::invalid_argument("self-edges are not allowed");
  edges_[from * nodes_ + to] = dependency;
}

void TypedValueGraph::clear_edge(std::size_t from, std::size_t to) {
  if (from >= nodes_ || to >= nodes_) throw std::out_of_range("edge endpoint out of range");
  edges_[from * nodes_ + to].reset();
}

std::size_t TypedValueGraph::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const auto& e) { return e.has_value(); }));
}

namespace {

// Walks the path and hands every edge to fn. Throws on the first missing edge.
template <typename Fn>
void visit_path(const TypedValueGraph& graph, std::span<const std::size_t> path, Fn&& fn) {
  if (path.size() < 2) throw InvalidPathError("a dependency path needs at least two nodes");
  for (std::size_t k = 1; k < path.size(); ++k) {
    std::size_t from = path[k - 1];
    std::size_t to = path[k];
    if (from >= graph.size() || to >= graph.size() || from == to || !graph.edge(from, to)) {
      throw InvalidPathError("no dependency from node " + std::to_string(from) + " to node " +
                             std::to_string(to) + " (step " + std::to_string(k) + ")");
    }
    fn(*graph.edge(from, to));
  }
}

}  // namespace

double path_strength(const TypedValueGraph& graph, std::span<const std::size_t> path) {
  double strength = 1.0;
  visit_path(graph, path, [&](const Dependency& d) { strength = std::min(strength, d.strength); });
  return strength;
}

Sign path_quality(const TypedValueGraph& graph, std::span<const std::size_t> path) {
  Sign quality = Sign::positive;
  visit_path(graph, path, [&](const Dependency& d) { quality = quality * d.sign; });
  return quality;
}

Matrix<double> maxmin_closure(Matrix<double> w) {
  const std::size_t n = w.rows();
  for (std::size_t k = 0; k < n; ++k) {
    auto through = w.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double to_k = w(i, k);
      if (to_k == 0.0) continue;
      auto from_i = w.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        const double via = std::min(to_k, through[j]);
        if (via > from_i[j]) from_i[j] = via;
      }
    }
  }
  return w;
}

SignedClosure signed_closure(const TypedValueGraph& graph) {
  const std::size_t n = graph.size();
  // Node (i, s) lives at index 2i + s, s = 0 for positive, 1 for negative.
  auto state = [](std::size_t node, Sign s) { return 2 * node + (s == Sign::negative ? 1 : 0); };

  Matrix<double> expanded(2 * n, 2 * n, 0.0);
  graph.for_each_edge([&](std::size_t i, std::size_t j, const Dependency& d) {
    for (Sign s : {Sign::positive, Sign::negative}) {
      expanded(state(i, s), state(j, s * d.sign)) = d.strength;
    }
  });
  Matrix<double> closed = maxmin_closure(std::move(expanded));

  SignedClosure out{Matrix<double>(n, n, 0.0), Matrix<double>(n, n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.positive(i, j) = closed(state(i, Sign::positive), state(j, Sign::positive));
      out.negative(i, j) = closed(state(i, Sign::positive), state(j, Sign::negative));
    }
  }
  return out;
}

namespace {

struct WalkEnumerator {
  const TypedValueGraph& graph;
  std::size_t source;
  SignedClosure& out;
  // visited[2 * node + sign]
  std::vector<char> visited;

  void extend(std::size_t node, Sign sign, double strength) {
    for (std::size_t next = 0; next < graph.size(); ++next) {
      if (next == node) continue;
      const auto& e = graph.edge(node, next);
      if (!e) continue;
      const Sign s = sign * e->sign;
      const double w = std::min(strength, e->strength);
      double& best = s == Sign::positive ? out.positive(source, next) : out.negative(source, next);
      best = std::max(best, w);
      const std::size_t key = 2 * next + (s == Sign::negative ? 1 : 0);
      if (visited[key]) continue;
      visited[key] = 1;
      extend(next, s, w);
      visited[key] = 0;
    }
  }
};

}  // namespace

SignedClosure oracle_closure(const TypedValueGraph& graph) {
  const std::size_t n = graph.size();
  if (n > kOracleClosureLimit) {
    throw OracleLimitError("walk enumeration refuses graphs with more than " +
                           std::to_string(kOracleClosureLimit) + " nodes");
  }
  SignedClosure out{Matrix<double>(n, n, 0.0), Matrix<double>(n, n, 0.0)};
  for (std::size_t source = 0; source < n; ++source) {
    WalkEnumerator walker{graph, source, out, std::vector<char>(2 * n, 0)};
    walker.visited[2 * source] = 1;
    walker.extend(source, Sign::positive, 1.0);
  }
  return out;
}

InfluenceMatrix influence_matrix(const SignedClosure& closure) {
  const std::size_t n = closure.positive.rows();
  InfluenceMatrix out{Matrix<double>(n, n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.values(i, j) = closure.positive(i, j) - closure.negative(i, j);
  return out;
}

}  // namespace valueplan
