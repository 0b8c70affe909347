#include "symbreak/ball.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <unordered_set>

#include "symbreak/errors.hpp"

namespace symbreak {

std::size_t default_vertex_budget() {
  static const std::size_t budget = [] {
    if (const char* env = std::getenv("SYMBREAK_BUDGET")) {
      std::size_t value = 0;
      std::string_view s(env);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
    }
    return kDefaultVertexBudget;
  }();
  return budget;
}

// ---------------------------------------------------------------------------
// FiniteGraph

FiniteGraph::FiniteGraph(int vertex_count, std::vector<Edge> edges, std::vector<VertexId> labels)
    : n_(vertex_count) {
  if (n_ < 0) throw ArgumentError("negative vertex count");
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ArgumentError("edge endpoint out of range");
    if (a == b) throw ArgumentError("self-loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  std::vector<int> deg(n_, 0);
  for (auto [a, b] : edges_) {
    ++deg[a];
    ++deg[b];
  }
  offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.assign(offsets_[n_], 0);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [a, b] : edges_) {
    adj_[fill[a]++] = b;
    adj_[fill[b]++] = a;
  }
  for (int v = 0; v < n_; ++v) std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);

  if (labels.empty()) {
    labels.reserve(n_);
    for (int v = 0; v < n_; ++v) labels.emplace_back(std::to_string(v));
  }
  if (static_cast<int>(labels.size()) != n_) throw ArgumentError("label count does not match vertex count");
  labels_ = std::move(labels);
  index_.reserve(n_);
  for (int v = 0; v < n_; ++v) {
    if (!index_.emplace(labels_[v], v).second)
      throw ArgumentError("duplicate vertex label " + labels_[v].str());
  }
}

bool FiniteGraph::has_edge(int u, int w) const {
  auto nb = adjacent(u);
  return std::binary_search(nb.begin(), nb.end(), w);
}

std::optional<int> FiniteGraph::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// BallView

std::optional<int> BallView::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> BallView::distance_of(const VertexId& v) const {
  auto i = index_of(v);
  if (!i) return std::nullopt;
  return dist_[*i];
}

std::pair<int, int> BallView::sphere_range(int d) const {
  if (d < 0 || d + 1 >= static_cast<int>(sphere_offsets_.size())) return {0, 0};
  return {sphere_offsets_[d], sphere_offsets_[d + 1]};
}

std::size_t BallView::sphere_size(int d) const {
  auto [a, b] = sphere_range(d);
  return static_cast<std::size_t>(b - a);
}

std::vector<VertexId> BallView::sphere(int d) const {
  auto [a, b] = sphere_range(d);
  std::vector<VertexId> out(vertices_.begin() + a, vertices_.begin() + b);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t BallView::ball_size(int d) const {
  if (d < 0) return 0;
  int last = std::min<int>(d + 1, static_cast<int>(sphere_offsets_.size()) - 1);
  return static_cast<std::size_t>(sphere_offsets_[last]);
}

std::vector<VertexId> neighbors(const GraphHandle& g, const VertexId& v) {
  g.validate(v);
  return g.neighbors(v);
}

BallView ball(const GraphHandle& g, const VertexId& v, int r, std::size_t budget) {
  if (r < 0) throw ArgumentError("ball radius must be nonnegative, got " + std::to_string(r));
  g.validate(v);

  BallView b;
  b.radius_ = r;
  b.vertices_.push_back(v);
  b.dist_.push_back(0);
  b.index_.emplace(v, 0);
  b.sphere_offsets_ = {0};

  // Neighbor lists of every ball vertex are needed for the induced edges, so
  // keep them from the expansion pass.
  std::vector<std::vector<VertexId>> nbrs;
  for (std::size_t head = 0; head < b.vertices_.size(); ++head) {
    const int d = b.dist_[head];
    nbrs.push_back(g.neighbors(b.vertices_[head]));
    if (d == r) continue;
    for (const auto& w : nbrs.back()) {
      if (b.index_.count(w)) continue;
      if (b.vertices_.size() >= budget)
        throw BudgetExceeded(budget, "ball of radius " + std::to_string(r) + " around " + v.str() +
                                         " in " + g.family_name());
      b.index_.emplace(w, static_cast<int>(b.vertices_.size()));
      b.vertices_.push_back(w);
      b.dist_.push_back(d + 1);
    }
  }

  for (std::size_t i = 0; i < b.vertices_.size(); ++i) {
    while (static_cast<int>(b.sphere_offsets_.size()) <= b.dist_[i]) b.sphere_offsets_.push_back(static_cast<int>(i));
  }
  b.sphere_offsets_.push_back(static_cast<int>(b.vertices_.size()));

  b.boundary_.assign(b.vertices_.size(), 0);
  for (std::size_t i = 0; i < b.vertices_.size(); ++i) {
    for (const auto& w : nbrs[i]) {
      auto it = b.index_.find(w);
      if (it == b.index_.end()) {
        ++b.boundary_[i];
      } else if (it->second > static_cast<int>(i)) {
        b.edges_.emplace_back(static_cast<int>(i), it->second);
      }
    }
  }
  std::sort(b.edges_.begin(), b.edges_.end());
  return b;
}

std::vector<VertexId> sphere(const GraphHandle& g, const VertexId& v, int r, std::size_t budget) {
  return ball(g, v, r, budget).sphere(r);
}

std::optional<int> distance(const GraphHandle& g, const VertexId& u, const VertexId& w, int cap,
                            std::size_t budget) {
  if (cap < 0) throw ArgumentError("distance cap must be nonnegative");
  g.validate(u);
  g.validate(w);
  if (u == w) return 0;

  // Alternate expanding whichever frontier is smaller; the first layer that
  // touches the other side fixes the distance.
  std::unordered_map<VertexId, int> seen[2];
  std::vector<VertexId> frontier[2] = {{u}, {w}};
  int radius[2] = {0, 0};
  seen[0].emplace(u, 0);
  seen[1].emplace(w, 0);

  while (radius[0] + radius[1] < cap) {
    if (frontier[0].empty() || frontier[1].empty()) return std::nullopt;
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    const int other = 1 - side;
    std::vector<VertexId> next;
    std::optional<int> best;
    for (const auto& x : frontier[side]) {
      for (auto& y : g.neighbors(x)) {
        if (seen[side].count(y)) continue;
        if (auto it = seen[other].find(y); it != seen[other].end()) {
          const int d = radius[side] + 1 + it->second;
          if (!best || d < *best) best = d;
        }
        seen[side].emplace(y, radius[side] + 1);
        next.push_back(std::move(y));
        if (seen[0].size() + seen[1].size() > budget)
          throw BudgetExceeded(budget, "distance search from " + u.str() + " to " + w.str());
      }
    }
    ++radius[side];
    frontier[side] = std::move(next);
    if (best) return *best <= cap ? best : std::nullopt;
  }
  return std::nullopt;
}

FiniteGraph induced_ball_graph(const BallView& b) {
  return FiniteGraph(static_cast<int>(b.size()), b.edges(), b.vertices());
}

// ---------------------------------------------------------------------------
// Metric

Metric::Metric(GraphHandle g, int cap, std::size_t budget) : g_(std::move(g)), cap_(cap), budget_(budget) {}

const BallView& Metric::ball_around(const VertexId& u) const {
  auto it = cache_.find(u);
  if (it == cache_.end()) it = cache_.emplace(u, ball(g_, u, cap_, budget_)).first;
  return it->second;
}

std::optional<int> Metric::operator()(const VertexId& u, const VertexId& w) const {
  if (g_.has_metric()) {
    auto d = g_.metric(u, w);
    if (d && *d <= cap_) return static_cast<int>(*d);
    if (d) return std::nullopt;
  }
  if (auto it = cache_.find(w); it != cache_.end()) return it->second.distance_of(u);
  return ball_around(u).distance_of(w);
}

}  // namespace symbreak
