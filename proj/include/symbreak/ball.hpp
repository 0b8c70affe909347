#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symbreak/graph.hpp"
#include "symbreak/vertex_id.hpp"

namespace symbreak {

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

/// Budget used when a call does not pass one: SYMBREAK_BUDGET if set and
/// parseable, else kDefaultVertexBudget.
std::size_t default_vertex_budget();

using Edge = std::pair<int, int>;

/// Simple undirected graph over dense indices 0..n-1.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  /// Edges are normalized (lo, hi), sorted and deduplicated. Self-loops and
  /// out-of-range endpoints throw ArgumentError.
  FiniteGraph(int vertex_count, std::vector<Edge> edges, std::vector<VertexId> labels = {});

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const int> adjacent(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(int u, int w) const;

  /// Index -> VertexId; generated as decimal strings when not supplied.
  const VertexId& label(int v) const { return labels_[v]; }
  const std::vector<VertexId>& labels() const noexcept { return labels_; }
  std::optional<int> index_of(const VertexId& v) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;  // sorted per vertex
  std::vector<VertexId> labels_;
  std::unordered_map<VertexId, int> index_;
};

/// Materialized B_v(r). Vertices are stored in BFS discovery order, so each
/// sphere is a contiguous index range.
class BallView {
 public:
  const VertexId& root() const noexcept { return vertices_.front(); }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const VertexId& vertex(int i) const { return vertices_[i]; }
  int distance(int i) const { return dist_[i]; }
  std::optional<int> index_of(const VertexId& v) const;
  std::optional<int> distance_of(const VertexId& v) const;
  bool contains(const VertexId& v) const { return index_.count(v) != 0; }

  /// Index range [first, last) of S_root(d); empty once d exceeds the
  /// eccentricity or the radius.
  std::pair<int, int> sphere_range(int d) const;
  std::size_t sphere_size(int d) const;
  std::vector<VertexId> sphere(int d) const;
  /// Number of vertices at distance <= d.
  std::size_t ball_size(int d) const;
  /// Largest d with a nonempty sphere (bounded by the radius).
  int eccentricity() const noexcept { return static_cast<int>(sphere_offsets_.size()) - 2; }

  /// Induced edges, (lo, hi) index pairs in ascending order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Per-vertex count of edges leaving the ball (diagnostics only).
  const std::vector<int>& boundary_degree() const noexcept { return boundary_; }

 private:
  friend BallView ball(const GraphHandle&, const VertexId&, int, std::size_t);

  int radius_ = 0;
  std::vector<VertexId> vertices_;
  std::vector<int> dist_;
  std::vector<int> sphere_offsets_;  // sphere d = [off[d], off[d+1])
  std::unordered_map<VertexId, int> index_;
  std::vector<Edge> edges_;
  std::vector<int> boundary_;
};

/// Oracle access with identifier validation.
std::vector<VertexId> neighbors(const GraphHandle& g, const VertexId& v);

/// Breadth-first ball; ties follow the oracle's neighbor order.
/// Throws ArgumentError for r < 0, BudgetExceeded past `budget` vertices.
BallView ball(const GraphHandle& g, const VertexId& v, int r, std::size_t budget);
inline BallView ball(const GraphHandle& g, const VertexId& v, int r) {
  return ball(g, v, r, default_vertex_budget());
}

/// S_v(r), sorted by VertexId.
std::vector<VertexId> sphere(const GraphHandle& g, const VertexId& v, int r,
                             std::size_t budget = default_vertex_budget());

/// Exact d(u, w) by bidirectional BFS when it is at most `cap`, else nullopt.
std::optional<int> distance(const GraphHandle& g, const VertexId& u, const VertexId& w, int cap,
                            std::size_t budget = default_vertex_budget());

FiniteGraph induced_ball_graph(const BallView& b);

/// Distance queries that prefer the family's closed form and fall back to
/// memoized BFS balls of radius `cap` around each queried source.
class Metric {
 public:
  Metric(GraphHandle g, int cap, std::size_t budget = default_vertex_budget());

  /// nullopt when d(u, w) > cap.
  std::optional<int> operator()(const VertexId& u, const VertexId& w) const;

 private:
  const BallView& ball_around(const VertexId& u) const;

  GraphHandle g_;
  int cap_;
  std::size_t budget_;
  mutable std::unordered_map<VertexId, BallView> cache_;
};

}  // namespace symbreak
