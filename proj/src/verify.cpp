#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

namespace {

std::size_t effective(std::size_t budget) { return budget ? budget : default_vertex_budget(); }

// Reach of B_root(R) measured from the construction root must stay inside
// the construction radius.
void require_inside(const Coloring& c, const VertexId& root, int R, std::size_t budget) {
  if (R < 0) throw ArgumentError("radius must be nonnegative");
  auto d = distance(c.graph, c.root, root, c.radius, budget);
  if (!d || *d + R > c.radius)
    throw ArgumentError("B_" + root.str() + "(" + std::to_string(R) + ") reaches beyond construction radius " +
                        std::to_string(c.radius));
}

std::vector<std::size_t> blue_per_sphere(const Coloring& c, const BallView& b) {
  std::vector<std::size_t> out(b.radius() + 1, 0);
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    if (c.is_blue(b.vertex(i))) ++out[b.distance(i)];
  return out;
}

VerifyReport verify_on(const BallView& b, const FiniteGraph& f, const std::set<VertexId>& blue, int r_inner,
                       const VerifyOptions& opts) {
  VerifyReport rep;
  rep.R_outer = b.radius();
  rep.r_inner = r_inner;
  rep.ball_size = b.size();
  rep.inner_size = b.ball_size(r_inner);
  SearchConstraints cons;
  std::vector<int> blue_idx;
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    if (blue.count(b.vertex(i))) blue_idx.push_back(i);
  rep.blue_in_ball = blue_idx.size();
  cons.preserved_sets.push_back(std::move(blue_idx));
  std::vector<int> targets(rep.inner_size);
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = static_cast<int>(i);

  auto fix = check_targets_fixed(f, cons, targets, opts.max_offenders, opts.node_cap);
  rep.nodes = fix.nodes;
  rep.pass = fix.all_fixed;
  for (const auto& p : fix.offenders) {
    Offender o;
    o.cycles = p.cycles(f.labels());
    o.motion = motion_of(p);
    for (int t : targets)
      if (!p.fixes(t)) o.moved_targets.push_back(b.vertex(t));
    rep.offenders.push_back(std::move(o));
  }
  return rep;
}

void check_radii(int R_outer, int r_inner, int margin) {
  if (r_inner < 0) throw ArgumentError("r_inner must be nonnegative");
  if (r_inner > R_outer - margin)
    throw ArgumentError("r_inner = " + std::to_string(r_inner) + " exceeds R_outer - margin = " +
                        std::to_string(R_outer - margin));
}

}  // namespace

DensityCurve density_profile(const Coloring& c, const VertexId& root, int R, std::size_t budget) {
  require_inside(c, root, R, budget);
  const BallView b = ball(c.graph, root, R, budget);
  const auto per = blue_per_sphere(c, b);
  DensityCurve curve;
  curve.root = root;
  std::size_t blue = 0;
  for (int n = 0; n <= R; ++n) {
    blue += per[n];
    DensityRow row{n, blue, b.ball_size(n), 0.0};
    row.ratio = static_cast<double>(row.blue) / static_cast<double>(row.ball);
    curve.rows.push_back(row);
  }
  return curve;
}

std::size_t TransferReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const TransferRow& r) { return !r.count_ok || !r.size_ok; }));
}

TransferReport growth_ratio_transfer(const Coloring& c, const VertexId& x, std::optional<VertexId> w,
                                     std::size_t budget) {
  TransferReport rep;
  rep.v = c.root;
  rep.w = w ? *w : c.root;
  rep.x = x;
  auto dvx = distance(c.graph, c.root, x, c.radius, budget);
  if (!dvx) throw ArgumentError(x.str() + " lies outside the construction radius");
  auto dvw = distance(c.graph, c.root, rep.w, c.radius, budget);
  if (!dvw) throw ArgumentError(rep.w.str() + " lies outside the construction radius");
  rep.d = *dvx;
  const int top = c.radius - rep.d;
  if (top < 0) throw ArgumentError("no radius left for the transfer");
  const int dwx = *distance(c.graph, rep.w, x, 2 * c.radius, budget);

  const GrowthProfile gp = growth_profile(c.graph, rep.w, std::max(1, c.radius), budget);
  rep.c = gp.ratio_bound;
  rep.k = std::pow(rep.c, -static_cast<double>(dwx + rep.d + *dvw));

  const BallView bx = ball(c.graph, x, top, budget);
  const BallView bv = ball(c.graph, c.root, c.radius, budget);
  const auto px = blue_per_sphere(c, bx);
  const auto pv = blue_per_sphere(c, bv);
  std::size_t blue_x = 0;
  std::vector<std::size_t> cum_v(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) cum_v[i] = pv[i] + (i ? cum_v[i - 1] : 0);
  for (int n = 0; n <= top; ++n) {
    blue_x += px[n];
    TransferRow row;
    row.n = n;
    row.blue_x = blue_x;
    row.ball_x = bx.ball_size(n);
    row.blue_v = cum_v[n + rep.d];
    row.ball_v = bv.ball_size(n + rep.d);
    row.count_ok = row.blue_x <= row.blue_v;
    // Strictness comes from the growth bound over d(v,x) >= 1 steps.
    const double lhs = static_cast<double>(row.ball_x), rhs = rep.k * static_cast<double>(row.ball_v);
    row.size_ok = rep.d > 0 ? lhs > rhs : lhs >= rhs;
    rep.rows.push_back(row);
  }
  return rep;
}

VerifyReport verify_distinguishing(const Coloring& c, int R_outer, int r_inner, const VerifyOptions& opts) {
  if (R_outer > c.radius)
    throw ArgumentError("R_outer = " + std::to_string(R_outer) + " exceeds construction radius " +
                        std::to_string(c.radius));
  check_radii(R_outer, r_inner, opts.margin);
  const BallView b = ball(c.graph, c.root, R_outer, effective(opts.budget));
  const FiniteGraph f = induced_ball_graph(b);
  return verify_on(b, f, c.blue, r_inner, opts);
}

MonteCarloReport monte_carlo_distinguishing(const GraphHandle& g, const VertexId& v, int R_outer, int r_inner,
                                            const RandomSchedule& s, int trials, unsigned threads,
                                            const VerifyOptions& opts) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  check_radii(R_outer, r_inner, opts.margin);
  const BallView b = ball(g, v, R_outer, effective(opts.budget));
  const FiniteGraph f = induced_ball_graph(b);

  MonteCarloReport rep;
  rep.R_outer = R_outer;
  rep.r_inner = r_inner;
  rep.trials = trials;
  rep.schedule = s.str();
  rep.master_seed = s.seed();
  std::uint64_t state = s.seed();
  for (int t = 0; t < trials; ++t) rep.seeds.push_back(splitmix64(state));
  rep.passed.assign(trials, 0);
  rep.blue_counts.assign(trials, 0);
  std::vector<std::vector<std::size_t>> per_sphere(trials);

  auto run = [&](int t) {
    std::set<VertexId> blue;
    std::vector<std::size_t> spheres(R_outer + 1, 0);
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
      if (vertex_uniform(rep.seeds[t], b.vertex(i)) < s.p(b.distance(i))) {
        blue.insert(b.vertex(i));
        ++spheres[b.distance(i)];
      }
    rep.blue_counts[t] = blue.size();
    per_sphere[t] = std::move(spheres);
    rep.passed[t] = verify_on(b, f, blue, r_inner, opts).pass ? 1 : 0;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) run(t);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back([&, k] {
        try {
          for (int t = static_cast<int>(k); t < trials; t += static_cast<int>(threads)) run(t);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (int t = 0; t < trials; ++t) rep.passes += rep.passed[t];
  rep.mean_density.assign(R_outer + 1, 0.0);
  for (int t = 0; t < trials; ++t) {
    std::size_t cum = 0;
    for (int n = 0; n <= R_outer; ++n) {
      cum += per_sphere[t][n];
      rep.mean_density[n] += static_cast<double>(cum) / static_cast<double>(b.ball_size(n));
    }
  }
  for (auto& m : rep.mean_density) m /= trials;
  return rep;
}

}  // namespace symbreak
