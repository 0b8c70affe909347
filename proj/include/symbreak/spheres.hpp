#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symbreak/ball.hpp"
#include "symbreak/graph.hpp"

namespace symbreak {

/// Exact fraction used for epsilon parameters. Parses "1/4" or "0.25".
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(std::string_view text);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A vertex of dsc(u, w) with the depths n <= R at which it lies in
/// S_u(n) xor S_w(n).
struct DscWitness {
  VertexId x;
  std::vector<int> depths;
};

/// Every x in S_u(n) xor S_w(n) for some 1 <= n <= R, sorted by x. Note that
/// u and w themselves always appear (at depth d(u, w) when that is <= R).
std::vector<DscWitness> dsc_set(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                std::size_t budget = default_vertex_budget());

/// Unordered pairs {u, w}, u < w, with d(v,u) = d(v,w) in 1..r_pairs, taken
/// from `b` and ordered by depth, then by (u, w).
std::vector<std::pair<VertexId, VertexId>> equidistant_pairs(const BallView& b, int r_pairs);

/// N(u) - {w} = N(w) - {u}. Then d(u,x) = d(w,x) for every other x, so
/// no depth ever witnesses the pair.
bool are_twins(const GraphHandle& g, const VertexId& u, const VertexId& w);

/// Smallest n in 1..R such that S_u(n) and S_w(n) differ in a vertex other
/// than u and w. The pair itself differs at depth d(u, w) in every graph, so
/// those two vertices are not counted as evidence.
std::optional<int> first_witness_depth(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                       std::size_t budget = default_vertex_budget());

struct PairOutcome {
  VertexId u, w;
  int depth = 0;                   // d(v, u) = d(v, w)
  std::optional<int> first_depth;  // first nontrivial witness depth <= R
  int witness_depths = 0;          // number of such depths in 1..R
  bool failed() const { return !first_depth.has_value(); }
};

/// One-sided evidence for the distinct spheres condition at v: a FAIL means
/// no witness up to R, not that the pair fails for every n.
struct DscReport {
  VertexId root;
  int r_pairs = 0;
  int R = 0;
  std::vector<PairOutcome> pairs;
  int eccentricity_lower_bound = 0;  // measured on B_v(R)

  std::size_t failures() const;
  bool all_witnessed() const { return failures() == 0; }
};

/// ArgumentError unless 1 <= r_pairs <= R.
DscReport check_dsc(const GraphHandle& g, const VertexId& v, int r_pairs, int R,
                    std::size_t budget = default_vertex_budget());

/// Smallest n in 0..R with B_u(n) = B_w(n), if any.
std::optional<int> ball_equivalent(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                   std::size_t budget = default_vertex_budget());

struct GrowthProfile {
  VertexId root;
  int R = 0;
  std::vector<std::size_t> sphere;  // |S_v(n)|, n = 0..R
  std::vector<std::size_t> ball;    // |B_v(n)|
  double ratio_bound = 0;           // max_n |B(n+1)| / |B(n)|
  int ratio_at = 0;                 // maximizing n

  double ratio(int n) const { return static_cast<double>(ball[n + 1]) / static_cast<double>(ball[n]); }
};

GrowthProfile growth_profile(const GraphHandle& g, const VertexId& v, int R,
                             std::size_t budget = default_vertex_budget());

/// Depths 1..R with 3 |S_v(n)| <= 2 n (1 - eps), compared exactly.
/// ArgumentError unless 0 < eps < 1.
std::vector<int> sphere_condition_depths(const GrowthProfile& profile, const Rational& eps);

}  // namespace symbreak
