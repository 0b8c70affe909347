#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "symbreak/automorphisms.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

// Closure checks are quadratic in the group order; past this size the flag
// stays false rather than stalling the caller.
constexpr std::size_t kClosureCheckLimit = 1024;

std::vector<int> indices_of(const StabilizerRestriction& s, std::span<const VertexId> pts) {
  std::vector<int> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    auto i = s.index_of(p);
    if (!i) throw ArgumentError("vertex " + p.str() + " is outside B_" + s.root.str() + "(" +
                                std::to_string(s.inner_radius) + ")");
    out.push_back(*i);
  }
  return out;
}

StabilizerRestriction with_elements(const StabilizerRestriction& s, std::vector<Permutation> elems) {
  StabilizerRestriction out;
  out.root = s.root;
  out.inner_radius = s.inner_radius;
  out.outer_radius = s.outer_radius;
  out.domain = s.domain;
  out.depth = s.depth;
  out.elements = std::move(elems);
  out.closure_verified = out.elements.size() <= kClosureCheckLimit && is_group(out.elements);
  return out;
}

}  // namespace

std::optional<int> StabilizerRestriction::index_of(const VertexId& x) const {
  auto it = std::find(domain.begin(), domain.end(), x);
  if (it == domain.end()) return std::nullopt;
  return static_cast<int>(it - domain.begin());
}

bool StabilizerRestriction::moves(int i) const {
  return std::any_of(elements.begin(), elements.end(), [i](const Permutation& p) { return !p.fixes(i); });
}

StabilizerRestriction stabilizer_restriction(const GraphHandle& g, const VertexId& v, int n, int R,
                                             const StabilizerOptions& opts) {
  if (n < 0) throw ArgumentError("inner radius must be nonnegative");
  if (R < n) throw ArgumentError("outer radius must be at least the inner radius");
  const std::size_t budget = opts.budget ? opts.budget : default_vertex_budget();
  BallView b = ball(g, v, R, budget);
  FiniteGraph f = induced_ball_graph(b);

  const int m = static_cast<int>(b.ball_size(n));
  std::vector<int> domain(m);
  std::iota(domain.begin(), domain.end(), 0);

  SearchConstraints c;
  c.center = 0;
  RestrictionResult r;
  try {
    r = enumerate_restrictions(f, c, domain, opts.group_cap + 1, opts.node_cap);
  } catch (const SearchCapExceeded& e) {
    throw SearchCapExceeded(std::string(e.what()) + " while enumerating the stabilizer of " + v.str(),
                            e.partial_count());
  }
  if (r.restrictions.size() > opts.group_cap)
    throw GroupTooLarge("stabilizer restriction exceeds group cap " + std::to_string(opts.group_cap),
                        r.restrictions.size());

  StabilizerRestriction s;
  s.root = v;
  s.inner_radius = n;
  s.outer_radius = R;
  for (int i = 0; i < m; ++i) {
    s.domain.push_back(b.vertex(i));
    s.depth.push_back(b.distance(i));
  }
  std::sort(r.restrictions.begin(), r.restrictions.end());
  r.restrictions.erase(std::unique(r.restrictions.begin(), r.restrictions.end()), r.restrictions.end());
  return with_elements(s, std::move(r.restrictions));
}

StabilizerRestriction pointwise_stabilizer(const StabilizerRestriction& s, std::span<const VertexId> pts) {
  const auto idx = indices_of(s, pts);
  std::vector<Permutation> keep;
  for (const auto& p : s.elements)
    if (std::all_of(idx.begin(), idx.end(), [&](int i) { return p.fixes(i); })) keep.push_back(p);
  return with_elements(s, std::move(keep));
}

StabilizerRestriction setwise_stabilizer(const StabilizerRestriction& s, std::span<const VertexId> pts) {
  auto idx = indices_of(s, pts);
  std::sort(idx.begin(), idx.end());
  std::vector<Permutation> keep;
  for (const auto& p : s.elements) {
    std::vector<int> img;
    img.reserve(idx.size());
    for (int i : idx) img.push_back(p(i));
    std::sort(img.begin(), img.end());
    if (img == idx) keep.push_back(p);
  }
  return with_elements(s, std::move(keep));
}

bool is_group(std::span<const Permutation> elements) {
  if (elements.empty()) return false;
  const int n = elements.front().size();
  std::set<std::vector<int>> members;
  for (const auto& p : elements) {
    if (p.size() != n) return false;
    members.insert(p.images());
  }
  if (!members.count(Permutation::identity(n).images())) return false;
  for (const auto& p : elements) {
    if (!members.count(p.inverse().images())) return false;
    for (const auto& q : elements)
      if (!members.count(p.then(q).images())) return false;
  }
  return true;
}

std::size_t sphere_restriction_collisions(const StabilizerRestriction& s) {
  std::vector<int> outer;
  for (int i = 0; i < static_cast<int>(s.depth.size()); ++i)
    if (s.depth[i] == s.inner_radius) outer.push_back(i);
  std::map<std::vector<int>, std::size_t> seen;
  for (const auto& p : s.elements) {
    std::vector<int> key;
    key.reserve(outer.size());
    for (int i : outer) key.push_back(p(i));
    ++seen[key];
  }
  std::size_t pairs = 0;
  for (const auto& [key, k] : seen) pairs += k * (k - 1) / 2;
  return pairs;
}

}  // namespace symbreak
