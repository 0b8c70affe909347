#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symbreak/automorphisms.hpp"
#include "symbreak/ball.hpp"
#include "symbreak/graph.hpp"
#include "symbreak/spheres.hpp"

namespace symbreak {

inline constexpr int kDefaultMargin = 4;

/// x_i chosen for the i-th equidistant pair (1-based in the construction).
struct PairWitness {
  VertexId u, w, x;
  int depth = 0;  // d(v, x)
};

/// One level C_i of the stabilizer-descent coloring.
struct DescentLevel {
  int n = 0;                         // n_i
  int previous = 0;                  // n_{i-1}
  std::vector<VertexId> vertices;    // x_0, x_1, ... in choice order
  std::vector<int> depths;           // d(v, x_j)
  std::vector<std::size_t> orders;   // |K|, |K_(x0)|, |K_(x0,x1)|, ...
  bool forced_choice = false;        // x_0 picked with nothing moved on the sphere
  std::size_t sphere_collisions = 0; // group elements agreeing on S_v(n_i)
};

/// A 2-coloring of a truncation: everything outside `blue` is red.
struct Coloring {
  GraphHandle graph;
  VertexId root;
  int radius = 0;
  std::string strategy;  // dsc, dsc-relaxed, random, motion-growth, explicit
  std::map<std::string, std::string> parameters;
  std::vector<VertexId> anchor;
  std::set<VertexId> blue;
  std::vector<PairWitness> witnesses;
  std::vector<DescentLevel> levels;
  std::vector<std::string> notes;

  bool is_blue(const VertexId& x) const { return blue.count(x) != 0; }
};

/// Blue set given explicitly. ArgumentError if a blue vertex lies outside
/// B_root(radius).
Coloring explicit_coloring(const GraphHandle& g, const VertexId& root, int radius, std::set<VertexId> blue,
                           std::size_t budget = default_vertex_budget());

/// The two-sided path example with every first gadget vertex blue,
/// truncated to B_v(radius) around the P_1 vertex.
Coloring example_gadget_coloring(int radius, std::size_t budget = default_vertex_budget());

// ---------------------------------------------------------------------------
// Distinct spheres coloring

struct DscOptions {
  std::size_t budget = 0;  // 0 -> default_vertex_budget()
  /// Candidates examined per pair and depth before the full sphere is tried.
  std::size_t shadow_visit_cap = 20'000;
};

/// Anchor {v, a, b} plus one witness per equidistant pair with
/// d(v, x_i) >= 7 i^2.
Coloring dsc_coloring(const GraphHandle& g, const VertexId& v, int r_pairs, int R, const DscOptions& opts = {});

/// Same with d(v, x_i) >= gap * i.
Coloring dsc_coloring_relaxed(const GraphHandle& g, const VertexId& v, int r_pairs, int R, int gap,
                              const DscOptions& opts = {});

// ---------------------------------------------------------------------------
// Random coloring

/// p_n for the sphere at depth n. Forms: "zero", "harmonic" (1/(n+1)),
/// "power:a" ((n+1)^-a, 0 < a <= 1), "constant:c" (c = 0 only).
class RandomSchedule {
 public:
  enum class Kind { zero, harmonic, power };

  RandomSchedule() = default;
  /// ScheduleInvalid for forms that are not non-increasing with limit 0 or
  /// whose sum converges (except the all-zero schedule, which is kept for
  /// baselines and flagged by divergent()).
  static RandomSchedule parse(std::string_view text, std::uint64_t seed);

  double p(int n) const;
  bool divergent() const { return kind_ != Kind::zero; }
  std::string str() const;
  std::uint64_t seed() const noexcept { return seed_; }
  RandomSchedule with_seed(std::uint64_t s) const;

 private:
  Kind kind_ = Kind::harmonic;
  double exponent_ = 1.0;
  std::uint64_t seed_ = 0;
};

/// Uniform value in [0, 1) that depends only on (seed, encoding of x).
double vertex_uniform(std::uint64_t seed, const VertexId& x);
/// splitmix64 step, used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

Coloring random_coloring(const GraphHandle& g, const VertexId& v, int R, const RandomSchedule& s,
                         std::size_t budget = default_vertex_budget());

// ---------------------------------------------------------------------------
// Motion and growth coloring

struct MotionOptions {
  int margin = kDefaultMargin;
  std::size_t group_cap = kDefaultGroupCap;
  std::size_t node_cap = kDefaultNodeCap;
  std::size_t budget = 0;
};

/// Anchor {v} u B_w(1) for the first vertex w of degree >= 3 with
/// d(v, w) >= 3, then one stabilizer-descent set C_i per admissible depth
/// n_i <= R - margin.
Coloring motion_growth_coloring(const GraphHandle& g, const VertexId& v, const Rational& eps, int R,
                                const MotionOptions& opts = {});

// ---------------------------------------------------------------------------
// Diagnostics

struct DensityRow {
  int n = 0;
  std::size_t blue = 0;
  std::size_t ball = 0;
  double ratio = 0;
};

struct DensityCurve {
  VertexId root;
  std::vector<DensityRow> rows;  // n = 0..R
};

/// ArgumentError when B_root(R) reaches beyond the construction radius.
DensityCurve density_profile(const Coloring& c, const VertexId& root, int R,
                             std::size_t budget = default_vertex_budget());

struct TransferRow {
  int n = 0;
  std::size_t blue_x = 0, ball_x = 0;  // |B_x(n) n Blue|, |B_x(n)|
  std::size_t blue_v = 0, ball_v = 0;  // same for B_v(n + d)
  bool count_ok = true;                // blue_x <= blue_v
  bool size_ok = true;                 // ball_x > k ball_v (>= when d = 0)
};

struct TransferReport {
  VertexId v, w, x;
  int d = 0;           // d(v, x)
  double c = 0;        // measured ratio bound at w
  double k = 0;        // c^-(d(w,x) + d(v,x) + d(w,v))
  std::vector<TransferRow> rows;  // n = 0..radius - d
  std::size_t violations() const;
};

/// Numerical check of the ball-comparison chain behind root independence.
/// w defaults to the coloring root.
TransferReport growth_ratio_transfer(const Coloring& c, const VertexId& x, std::optional<VertexId> w = std::nullopt,
                                     std::size_t budget = default_vertex_budget());

// ---------------------------------------------------------------------------
// Verification

struct VerifyOptions {
  int margin = kDefaultMargin;
  std::size_t max_offenders = 8;
  std::size_t node_cap = kDefaultNodeCap;
  std::size_t budget = 0;
};

struct Offender {
  std::string cycles;  // over vertex encodings
  int motion = 0;
  std::vector<VertexId> moved_targets;
};

/// PASS iff every color-preserving automorphism of the induced graph on
/// B_root(R_outer) fixes B_root(r_inner) pointwise. Offenders are concrete
/// automorphisms that move some inner vertex (at most max_offenders).
struct VerifyReport {
  bool pass = false;
  int R_outer = 0, r_inner = 0;
  std::size_t ball_size = 0, inner_size = 0, blue_in_ball = 0;
  std::vector<Offender> offenders;
  std::size_t nodes = 0;
};

VerifyReport verify_distinguishing(const Coloring& c, int R_outer, int r_inner, const VerifyOptions& opts = {});

struct MonteCarloReport {
  int R_outer = 0, r_inner = 0, trials = 0, passes = 0;
  std::string schedule;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<char> passed;
  std::vector<std::size_t> blue_counts;
  std::vector<double> mean_density;  // n = 0..R_outer
  double estimate() const { return trials ? static_cast<double>(passes) / trials : 0.0; }
};

/// Per-trial seeds come from splitmix64 over the schedule's seed. Trials run
/// on `threads` workers (0 -> hardware concurrency); results do not depend on
/// the thread count.
MonteCarloReport monte_carlo_distinguishing(const GraphHandle& g, const VertexId& v, int R_outer, int r_inner,
                                            const RandomSchedule& s, int trials, unsigned threads = 0,
                                            const VerifyOptions& opts = {});

}  // namespace symbreak
