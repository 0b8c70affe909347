#include <algorithm>

#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

// Sphere sizes up to R, or up to the largest radius that fits the budget.
std::vector<std::size_t> sphere_sizes(const GraphHandle& g, const VertexId& v, int R, std::size_t budget,
                                      bool* truncated) {
  *truncated = false;
  try {
    auto p = growth_profile(g, v, R, budget);
    return p.sphere;
  } catch (const BudgetExceeded&) {
    *truncated = true;
  }
  std::vector<std::size_t> out;
  for (int r = 0; r <= R; ++r) {
    try {
      out.push_back(ball(g, v, r, budget).sphere_size(r));
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  return out;
}

// Index of the lexicographically least vertex of B_v(n) at depth d moved by
// some element of s.
std::optional<int> least_moved_at(const StabilizerRestriction& s, int d) {
  std::optional<int> best;
  for (int i = 0; i < static_cast<int>(s.domain.size()); ++i) {
    if (s.depth[i] != d || !s.moves(i)) continue;
    if (!best || s.domain[i] < s.domain[*best]) best = i;
  }
  return best;
}

}  // namespace

Coloring motion_growth_coloring(const GraphHandle& g, const VertexId& v, const Rational& eps, int R,
                                const MotionOptions& opts) {
  if (!(eps.num > 0 && eps.num < eps.den)) throw ArgumentError("epsilon must lie strictly between 0 and 1");
  if (opts.margin < 0) throw ArgumentError("margin must be nonnegative");
  if (R < 3) throw ArgumentError("construction radius must be at least 3");
  const std::size_t budget = opts.budget ? opts.budget : default_vertex_budget();
  g.validate(v);

  bool truncated = false;
  const auto sizes = sphere_sizes(g, v, R, budget, &truncated);
  GrowthProfile prof;
  prof.root = v;
  prof.R = static_cast<int>(sizes.size()) - 1;
  prof.sphere = sizes;
  const auto good = sphere_condition_depths(prof, eps);
  if (good.empty()) {
    std::string list;
    for (std::size_t n = 0; n < sizes.size() && n <= 12; ++n) list += (n ? " " : "") + std::to_string(sizes[n]);
    throw PreconditionError("no depth n <= " + std::to_string(prof.R) + " has 3|S_v(n)| <= 2n(1-eps) for eps = " +
                            eps.str() + "; sphere sizes from n = 0: " + list +
                            (truncated ? " (profile cut short by the vertex budget)" : ""));
  }

  // Anchor vertex w: first vertex of degree >= 3 outside B_v(2), in BFS
  // order with each sphere read lexicographically.
  const BallView around = ball(g, v, std::min(R, prof.R), budget);
  std::optional<VertexId> w;
  for (int d = 3; d <= around.radius() && !w; ++d)
    for (const auto& x : around.sphere(d))
      if (g.neighbors(x).size() >= 3) {
        w = x;
        break;
      }
  if (!w) throw StructureError("no vertex of degree >= 3 at distance >= 3 from " + v.str() + " within radius " +
                               std::to_string(around.radius()));
  const int dvw = *around.distance_of(*w);

  Coloring c;
  c.graph = g;
  c.root = v;
  c.radius = R;
  c.strategy = "motion-growth";
  c.parameters = {{"epsilon", eps.str()}, {"R", std::to_string(R)}, {"margin", std::to_string(opts.margin)}};
  c.anchor = {v, *w};
  c.blue.insert(v);
  c.blue.insert(*w);
  for (auto& y : g.neighbors(*w)) c.blue.insert(y);

  // n_0 = 2 d(v,w) + 1, then n_i eps > n_{i-1} with the sphere condition.
  std::vector<int> schedule;
  std::int64_t previous = 2 * dvw + 1;
  const int last = R - opts.margin;
  for (int n : good) {
    if (n > last) break;
    if (static_cast<__int128>(n) * eps.num > static_cast<__int128>(previous) * eps.den) {
      schedule.push_back(n);
      previous = n;
    }
  }
  if (schedule.empty())
    throw PreconditionError("no admissible n_1 <= R - margin = " + std::to_string(last) +
                            " with n_1 * eps > 2 d(v,w) + 1 = " + std::to_string(2 * dvw + 1));

  StabilizerOptions sopts{opts.group_cap, opts.node_cap, budget};
  int prev_n = 2 * dvw + 1;
  for (int n : schedule) {
    DescentLevel level;
    level.n = n;
    level.previous = prev_n;
    StabilizerRestriction k = stabilizer_restriction(g, v, n, n + opts.margin, sopts);
    level.sphere_collisions = sphere_restriction_collisions(k);
    level.orders.push_back(k.size());

    auto x0 = least_moved_at(k, n);
    if (!x0) {
      level.forced_choice = true;
      std::optional<int> least;
      for (int i = 0; i < static_cast<int>(k.domain.size()); ++i)
        if (k.depth[i] == n && (!least || k.domain[i] < k.domain[*least])) least = i;
      x0 = least;
    }
    if (!x0) throw StructureError("sphere S_v(" + std::to_string(n) + ") is empty");
    std::vector<VertexId> chosen{k.domain[*x0]};
    level.depths.push_back(n);
    StabilizerRestriction h = pointwise_stabilizer(k, chosen);
    level.orders.push_back(h.size());

    int depth = n;
    while (!h.trivial()) {
      std::optional<int> next;
      for (int d = depth - 1; d > prev_n && !next; --d) next = least_moved_at(h, d);
      if (!next) break;
      chosen.push_back(h.domain[*next]);
      depth = h.depth[*next];
      level.depths.push_back(depth);
      h = pointwise_stabilizer(h, std::vector<VertexId>{chosen.back()});
      level.orders.push_back(h.size());
    }
    for (const auto& x : chosen) c.blue.insert(x);
    level.vertices = std::move(chosen);
    if (level.forced_choice) c.notes.push_back("level n=" + std::to_string(n) + ": no sphere vertex moved, x_0 forced");
    if (level.sphere_collisions)
      c.notes.push_back("level n=" + std::to_string(n) + ": restriction to the sphere is not injective (" +
                        std::to_string(level.sphere_collisions) + " colliding pairs)");
    c.levels.push_back(std::move(level));
    prev_n = n;
  }
  return c;
}

}  // namespace symbreak
