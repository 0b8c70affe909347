#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "symbreak/ball.hpp"
#include "symbreak/graph.hpp"
#include "symbreak/permutation.hpp"

namespace symbreak {

inline constexpr std::size_t kDefaultNodeCap = 2'000'000;
inline constexpr std::size_t kDefaultGroupCap = 100'000;

/// Restrictions imposed on a search, all over FiniteGraph indices.
struct SearchConstraints {
  std::vector<int> fixed_points;
  /// Each set must be mapped onto itself (a color class, say).
  std::vector<std::vector<int>> preserved_sets;
  /// When set, the center is fixed and distance from it is used as an
  /// invariant.
  std::optional<int> center;

  /// Throws ArgumentError if any index falls outside 0..n-1.
  void validate(int n) const;
};

struct SearchResult {
  std::vector<Permutation> automorphisms;
  bool exhaustive = false;  // the list is the whole constrained group
  bool hit_node_cap = false;
  std::size_t nodes = 0;
};

/// Individualization-refinement backtracking. Every returned permutation is
/// a certified automorphism honoring `c`; the list is in search order and
/// starts with the identity. Stops with exhaustive = false once `limit`
/// automorphisms are found or the node cap is reached.
SearchResult search_automorphisms(const FiniteGraph& f, const SearchConstraints& c, std::size_t limit,
                                  std::size_t node_cap = kDefaultNodeCap);

/// Some automorphism honoring `c` that maps `from` to `to`, if one exists.
/// Throws SearchCapExceeded when the node cap is hit before a verdict.
std::optional<Permutation> find_automorphism(const FiniteGraph& f, const SearchConstraints& c, int from, int to,
                                             std::size_t node_cap = kDefaultNodeCap);

/// Isomorphism a -> b (images are b-indices), if any.
std::optional<Permutation> find_isomorphism(const FiniteGraph& a, const FiniteGraph& b,
                                            std::size_t node_cap = kDefaultNodeCap);

/// Adjacency check of a candidate map; returns a certified copy on success.
std::optional<Permutation> certify_automorphism(const FiniteGraph& f, const Permutation& p,
                                                const SearchConstraints& c = {});

struct RestrictionResult {
  /// Over positions in `domain`: element i maps domain[k] to domain[images[k]].
  std::vector<Permutation> restrictions;
  bool exhaustive = false;
  std::size_t nodes = 0;
};

/// Distinct restrictions to `domain` of the automorphisms honoring `c`. The
/// domain must be invariant under those automorphisms (e.g. an inner ball
/// when the center is fixed). It is imposed as a preserved set, so a
/// non-invariant domain silently narrows the group.
RestrictionResult enumerate_restrictions(const FiniteGraph& f, const SearchConstraints& c, std::span<const int> domain,
                                         std::size_t limit, std::size_t node_cap = kDefaultNodeCap);

/// Outcome of asking whether every automorphism honoring `c` fixes each
/// vertex of `targets`.
struct FixingReport {
  bool all_fixed = true;
  std::vector<Permutation> offenders;  // one per moved target found, up to max_offenders
  std::size_t nodes = 0;
};

FixingReport check_targets_fixed(const FiniteGraph& f, const SearchConstraints& c, std::span<const int> targets,
                                 std::size_t max_offenders = 8, std::size_t node_cap = kDefaultNodeCap);

// ---------------------------------------------------------------------------
// Root stabilizers of balls

/// Restrictions to B_v(n) of the automorphisms of the induced graph on
/// B_v(R) that fix v. Over-approximates the group induced by the true
/// stabilizer of v, since ball automorphisms need not extend.
struct StabilizerRestriction {
  VertexId root;
  int inner_radius = 0;
  int outer_radius = 0;
  std::vector<VertexId> domain;  // B_v(n) in BFS order
  std::vector<int> depth;        // d(v, domain[i])
  std::vector<Permutation> elements;  // sorted; identity included
  bool closure_verified = false;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<int> index_of(const VertexId& x) const;
  /// True when some element moves domain[i].
  bool moves(int i) const;
  bool trivial() const { return elements.size() == 1; }
};

struct StabilizerOptions {
  std::size_t group_cap = kDefaultGroupCap;
  std::size_t node_cap = kDefaultNodeCap;
  std::size_t budget = 0;  // 0 -> default_vertex_budget()
};

/// Throws ArgumentError for R < n or n < 0, GroupTooLarge past group_cap.
StabilizerRestriction stabilizer_restriction(const GraphHandle& g, const VertexId& v, int n, int R,
                                             const StabilizerOptions& opts = {});

/// Subgroup fixing every listed vertex (each must lie in the domain).
StabilizerRestriction pointwise_stabilizer(const StabilizerRestriction& s, std::span<const VertexId> pts);
/// Elements mapping the listed set onto itself.
StabilizerRestriction setwise_stabilizer(const StabilizerRestriction& s, std::span<const VertexId> pts);

/// Closure under composition and inverse, identity present.
bool is_group(std::span<const Permutation> elements);

/// Pairs of distinct elements that agree on the outermost sphere S_v(n);
/// zero means restriction to the sphere is injective.
std::size_t sphere_restriction_collisions(const StabilizerRestriction& s);

// ---------------------------------------------------------------------------
// Subgroup chains of Sym(n)

/// ceil(3n/2) - popcount(n) - 1. ArgumentError for n < 1.
int chain_length_bound(int n);

/// Longest strict subgroup chain in Sym(n) by exhaustive subgroup
/// enumeration; n in 1..5, ArgumentError otherwise.
int chain_length_oracle(int n);

}  // namespace symbreak
