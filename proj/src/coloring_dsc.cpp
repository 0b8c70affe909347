#include <algorithm>
#include <functional>
#include <unordered_set>

#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

std::size_t effective(std::size_t budget) { return budget ? budget : default_vertex_budget(); }

class WitnessSearch {
 public:
  WitnessSearch(const GraphHandle& g, const VertexId& v, int R, int reach, const DscOptions& opts)
      : g_(g), v_(v), R_(R), metric_(g, reach, effective(opts.budget)), budget_(effective(opts.budget)),
        visit_cap_(opts.shadow_visit_cap) {}

  int depth(const VertexId& x) {
    auto d = metric_(v_, x);
    return d ? *d : R_ + 1;
  }
  std::optional<int> dist(const VertexId& a, const VertexId& b) { return metric_(a, b); }

  using Accept = std::function<bool(const VertexId&)>;

  // Depth-first walk outward from `start` along edges that increase the
  // distance to v, in lexicographic order, testing vertices at depth k.
  std::optional<VertexId> shadow(const VertexId& start, int k, const Accept& accept) {
    const int d0 = depth(start);
    if (d0 > k) return std::nullopt;
    std::unordered_set<VertexId> seen{start};
    std::vector<std::pair<VertexId, int>> stack{{start, d0}};
    std::size_t visits = 0;
    while (!stack.empty()) {
      auto [x, d] = std::move(stack.back());
      stack.pop_back();
      if (++visits > visit_cap_) return std::nullopt;
      if (d == k) {
        if (accept(x)) return x;
        continue;
      }
      auto nb = g_.neighbors(x);
      std::sort(nb.begin(), nb.end());
      std::vector<VertexId> next;
      for (auto& y : nb)
        if (!seen.count(y) && depth(y) == d + 1) next.push_back(std::move(y));
      for (auto it = next.rbegin(); it != next.rend(); ++it) {
        seen.insert(*it);
        stack.emplace_back(*it, d + 1);
      }
    }
    return std::nullopt;
  }

  // Whole sphere S_v(k) in lexicographic order, when the ball fits.
  std::optional<VertexId> sphere_scan(int k, const Accept& accept) {
    if (sphere_unavailable_from_ && k >= *sphere_unavailable_from_) return std::nullopt;
    if (!big_ || big_->radius() < k) {
      try {
        big_ = ball(g_, v_, k, budget_);
      } catch (const BudgetExceeded&) {
        sphere_unavailable_from_ = k;
        return std::nullopt;
      }
    }
    for (const auto& x : big_->sphere(k))
      if (accept(x)) return x;
    return std::nullopt;
  }

 private:
  const GraphHandle& g_;
  VertexId v_;
  int R_;
  Metric metric_;
  std::size_t budget_;
  std::size_t visit_cap_;
  std::optional<BallView> big_;
  std::optional<int> sphere_unavailable_from_;
};

Coloring dsc_impl(const GraphHandle& g, const VertexId& v, int r_pairs, int R,
                  const std::function<std::int64_t(std::int64_t)>& min_depth, const std::string& strategy,
                  std::map<std::string, std::string> params, const DscOptions& opts) {
  if (r_pairs < 0) throw ArgumentError("r_pairs must be nonnegative");
  if (R < 3) throw ArgumentError("construction radius must be at least 3 to hold the anchor");
  if (R < r_pairs) throw ArgumentError("construction radius must be at least r_pairs");
  const std::size_t budget = effective(opts.budget);
  g.validate(v);

  const BallView inner = ball(g, v, std::max(r_pairs, 3), budget);
  const auto pairs = equidistant_pairs(inner, r_pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [u, w] = pairs[i];
    if (are_twins(g, u, w))
      throw PreconditionError("pair {" + u.str() + ", " + w.str() +
                              "} are twins (equal neighborhoods), so their spheres agree at every depth apart from "
                              "the pair itself; the distinct spheres condition fails");
    if (!first_witness_depth(g, u, w, R, budget))
      throw PreconditionError("pair {" + u.str() + ", " + w.str() + "} has equal spheres up to depth " +
                              std::to_string(R) + "; the distinct spheres condition fails at this radius");
  }

  std::vector<std::pair<VertexId, VertexId>> anchors;
  for (const auto& a : inner.sphere(2)) {
    auto nb = g.neighbors(a);
    std::sort(nb.begin(), nb.end());
    for (const auto& b : nb)
      if (inner.distance_of(b) == 3) anchors.emplace_back(a, b);
  }
  if (anchors.empty()) throw AnchorNotFound("no adjacent a, b with d(v,a) = 2 and d(v,b) = 3");

  WitnessSearch search(g, v, R, R + r_pairs + 3, opts);

  for (const auto& [a, b] : anchors) {
    std::set<VertexId> blue{v, a, b};
    std::set<int> used{0, 1, 2, 3};
    std::vector<PairWitness> witnesses;

    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [u, w] = pairs[i];
      auto accept = [&](const VertexId& x) {
        if (blue.count(x)) return false;
        auto du = search.dist(u, x), dw = search.dist(w, x);
        if (du == dw) return false;
        auto da = search.dist(a, x), db = search.dist(b, x);
        if ((da && *da == 2) || (db && *db == 2)) return false;
        for (const auto& y : g.neighbors(x))
          if (blue.count(y)) return false;
        return true;
      };
      const std::int64_t lo = min_depth(static_cast<std::int64_t>(i) + 1);
      std::optional<VertexId> found;
      int k = static_cast<int>(std::max<std::int64_t>(lo, 0));
      for (; lo <= R && k <= R && !found; ++k) {
        if (used.count(k)) continue;
        found = search.shadow(w, k, accept);
        if (!found) found = search.shadow(u, k, accept);
        if (!found) found = search.sphere_scan(k, accept);
        if (found) break;
      }
      if (!found)
        throw WitnessExhausted("no admissible witness for pair " + std::to_string(i + 1) + " {" + u.str() + ", " +
                                   w.str() + "} at depth >= " + std::to_string(lo) + " within radius " +
                                   std::to_string(R),
                               i + 1);
      used.insert(k);
      blue.insert(*found);
      witnesses.push_back({u, w, *found, k});
    }

    // v must be the only blue vertex at distance 2 from the edge ab.
    bool pinned = true;
    for (const auto& x : blue) {
      if (x == v || x == a || x == b) continue;
      auto da = search.dist(a, x), db = search.dist(b, x);
      if ((da && *da == 2) || (db && *db == 2)) pinned = false;
    }
    if (!pinned) continue;

    Coloring c;
    c.graph = g;
    c.root = v;
    c.radius = R;
    c.strategy = strategy;
    params["r_pairs"] = std::to_string(r_pairs);
    params["R"] = std::to_string(R);
    c.parameters = std::move(params);
    c.anchor = {v, a, b};
    c.blue = std::move(blue);
    c.witnesses = std::move(witnesses);
    return c;
  }
  throw AnchorNotFound("no anchor leaves v as the only blue vertex at distance 2 from ab");
}

}  // namespace

Coloring dsc_coloring(const GraphHandle& g, const VertexId& v, int r_pairs, int R, const DscOptions& opts) {
  return dsc_impl(
      g, v, r_pairs, R, [](std::int64_t i) { return 7 * i * i; }, "dsc", {{"schedule", "7i^2"}}, opts);
}

Coloring dsc_coloring_relaxed(const GraphHandle& g, const VertexId& v, int r_pairs, int R, int gap,
                              const DscOptions& opts) {
  if (gap < 1) throw ArgumentError("gap must be at least 1");
  auto c = dsc_impl(
      g, v, r_pairs, R, [gap](std::int64_t i) { return gap * i; }, "dsc-relaxed",
      {{"schedule", "gap*i"}, {"gap", std::to_string(gap)}}, opts);
  c.notes.push_back("relaxed witness schedule d(v,x_i) >= " + std::to_string(gap) + "*i");
  return c;
}

}  // namespace symbreak
