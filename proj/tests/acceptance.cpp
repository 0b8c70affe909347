// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "symbreak/automorphisms.hpp"
#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"
#include "symbreak/spheres.hpp"

using namespace symbreak;

namespace {

// Runtime limits in seconds.
constexpr double kLimitChain = 60;
constexpr double kLimitExampleCounts = 120;
constexpr double kLimitDscColorings = 300;
constexpr double kLimitMotion = 120;
constexpr double kLimitRandom = 600;
constexpr double kLimitEngine = 300;

// Random coloring parameters.
constexpr int kTreeTrials = 200;
constexpr int kLineSeeds = 100;
constexpr int kLineRadius = 1000;
constexpr double kSigmas = 3.0;
constexpr std::uint64_t kMasterSeed = 0x5eed;

// Budget for the example graph balls (B_v(8) has about 2.4M vertices).
constexpr std::size_t kExampleBudget = 5'000'000;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { details.push_back("     " + what); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome chain_length() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    const int bound = chain_length_bound(n), oracle = chain_length_oracle(n);
    o.check(bound == oracle, fmt("n=%d formula=%d exhaustive=%d", n, bound, oracle));
  }
  return o;
}

Outcome example_counts() {
  Outcome o;
  const auto g = example_graph();
  for (int n = 2; n <= 5; ++n) {
    const std::uint64_t pn = example_path_size(n);
    // (3 + 4/n) |P_n|; n divides |P_n| for n > 1.
    const std::uint64_t want = 3 * pn + 4 * pn / n;
    const auto got = ball(g, example_root_vprime(), n).size();
    const auto shifted = ball(g, example_root_vprime(), n - 1).size();
    o.check(got == want, fmt("|B_v'(%d)| = %zu, closed form %llu (|B_v'(%d)| = %zu)", n, got,
                             static_cast<unsigned long long>(want), n - 1, shifted));
  }
  const auto c = example_gadget_coloring(5);
  const auto curve = density_profile(c, example_root_v(), 5);
  for (int n = 2; n <= 5; ++n) {
    const auto& r = curve.rows[n];
    // blue / ball <= 1 / n, in integers.
    o.check(r.blue * n <= r.ball, fmt("density at v, n=%d: %zu/%zu = %.4f <= 1/%d", n, r.blue, r.ball, r.ratio, n));
  }
  return o;
}

Outcome example_forced_pairs() {
  Outcome o;
  const auto g = example_graph();
  const auto vp = example_root_vprime();
  const auto b = ball(g, vp, 5, kExampleBudget);
  const auto f = induced_ball_graph(b);
  const auto base = example_gadget_coloring(8, kExampleBudget);

  std::vector<int> blue_idx;
  for (int i = 0; i < f.size(); ++i)
    if (base.is_blue(f.label(i))) blue_idx.push_back(i);

  std::size_t pairs = 0, swapped = 0;
  for (int i = 0; i < f.size(); ++i) {
    const auto& id = f.label(i).str();
    if (!id.starts_with("g1:")) continue;
    const auto j = f.index_of(VertexId("g2:" + id.substr(3)));
    if (!j) continue;
    ++pairs;
    // Same color both ways: recolor the pair inside the base coloring.
    bool both_ok = true;
    for (bool blue : {true, false}) {
      std::vector<int> cls;
      for (int k : blue_idx)
        if (k != i && k != *j) cls.push_back(k);
      if (blue) {
        cls.push_back(i);
        cls.push_back(*j);
      }
      SearchConstraints sc;
      sc.preserved_sets = {cls};
      sc.center = *b.index_of(vp);
      auto p = find_automorphism(f, sc, i, *j);
      both_ok = both_ok && p && p->certified() && motion_of(*p) >= 2;
    }
    // The swap alone, with everything else pinned.
    SearchConstraints pinned;
    for (int k = 0; k < f.size(); ++k)
      if (k != i && k != *j) pinned.fixed_points.push_back(k);
    auto p = find_automorphism(f, pinned, i, *j);
    if (both_ok && p && motion_of(*p) == 2) ++swapped;
  }
  o.check(pairs > 0 && swapped == pairs,
          fmt("%zu/%zu gadget pairs in B_v'(5) swapped by a color-preserving automorphism of B_v'(5)", swapped,
              pairs));

  VerifyOptions vo;
  vo.budget = kExampleBudget;
  const auto rep = verify_distinguishing(base, 8, 4, vo);
  o.check(rep.pass, fmt("gadget coloring verify R_outer=8 r_inner=4: %s (ball %zu, inner %zu, blue %zu)",
                        rep.pass ? "PASS" : "FAIL", rep.ball_size, rep.inner_size, rep.blue_in_ball));
  return o;
}

Outcome dsc_colorings() {
  Outcome o;
  const auto t0 = Clock::now();
  {
    auto c = dsc_coloring_relaxed(regular_tree(3), kTreeRoot, 2, 40, 2);
    // Every nontrivial automorphism of B(R) fixing the coloring shows up
    // within a small outer radius on a tree; 8 keeps the ball near 1.5k.
    auto rep = verify_distinguishing(c, 8, 2);
    o.check(rep.pass, fmt("regular_tree(3) r_pairs=2 R=40: %zu blue, verify R_outer=8 r_inner=2 %s", c.blue.size(),
                          rep.pass ? "PASS" : "FAIL"));
  }
  {
    auto c = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
    auto rep = verify_distinguishing(c, 80, 2);
    o.check(rep.pass, fmt("grid2d r_pairs=2 R=80: %zu blue, verify R_outer=80 r_inner=2 %s", c.blue.size(),
                          rep.pass ? "PASS" : "FAIL"));
  }
  {
    const int R = 100;
    auto c = dsc_coloring(biinfinite_path(), VertexId("0"), 3, R);
    auto curve = density_profile(c, VertexId("0"), R);
    int worst = -1;
    for (int n = 0; n <= R; ++n) {
      // |B(n) n Blue| <= 3 + sqrt(n/7)  <=>  k <= 3 or 7 (k - 3)^2 <= n.
      const long k = static_cast<long>(curve.rows[n].blue);
      if (k > 3 && 7 * (k - 3) * (k - 3) > n) worst = n;
    }
    std::ostringstream depths;
    for (const auto& w : c.witnesses) depths << ' ' << w.depth;
    o.check(worst < 0, fmt("biinfinite_path strict r_pairs=3 R=100: %zu blue, witness depths%s, bound %s", c.blue.size(),
                           depths.str().c_str(), worst < 0 ? "holds for all n" : "violated"));
  }
  const double t = seconds_since(t0);
  o.check(t < kLimitDscColorings, fmt("runtime %.1f s < %.0f s", t, kLimitDscColorings));
  return o;
}

Outcome dsc_discrimination() {
  Outcome o;
  for (int rp = 1; rp <= 4; ++rp) {
    auto tree = check_dsc(regular_tree(3), kTreeRoot, rp, 10);
    auto grid = check_dsc(grid2d(), VertexId("0,0"), rp, 10);
    o.check(tree.all_witnessed() && grid.all_witnessed(),
            fmt("r_pairs=%d R=10: tree %zu pairs, %zu unwitnessed; grid %zu pairs, %zu unwitnessed", rp,
                tree.pairs.size(), tree.failures(), grid.pairs.size(), grid.failures()));
  }
  int twin_fail = 0;
  for (int R = 1; R <= 12; ++R) {
    auto rep = check_dsc(twin_leaf_path(), VertexId("0"), 1, R);
    bool twin_reported = false, others_ok = true;
    for (const auto& p : rep.pairs) {
      const bool is_twin = std::set<VertexId>{p.u, p.w} == std::set<VertexId>{kTwinLeafU, kTwinLeafW};
      if (is_twin) twin_reported = p.failed();
      else if (R >= 2 && p.failed()) others_ok = false;
    }
    if (twin_reported) ++twin_fail;
    if (!others_ok) o.info(fmt("R=%d: a non-twin pair is unwitnessed", R));
  }
  o.check(twin_fail == 12, fmt("twin pair reported FAIL for %d of 12 radii R = 1..12", twin_fail));
  return o;
}

Outcome motion() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto g = twin_leaf_path();
  const VertexId v("5");
  const int R = 60;
  auto c = motion_growth_coloring(g, v, Rational::parse("1/4"), R);
  o.info(fmt("%zu blue, %zu levels", c.blue.size(), c.levels.size()));

  Metric dist(g, 2 * R);
  bool discipline = true, descent = true;
  for (const auto& L : c.levels) {
    std::ostringstream line;
    line << "level n=" << L.n << " prev=" << L.previous << " depths";
    for (auto d : L.depths) line << ' ' << d;
    line << " orders";
    for (auto k : L.orders) line << ' ' << k;
    if (L.forced_choice) line << " forced";
    if (L.sphere_collisions) line << " collisions=" << L.sphere_collisions;
    o.info(line.str());
    // Sphere discipline: x_0 on S(n_i), later x_j strictly inside and
    // strictly shallower than their predecessor, all beyond n_{i-1}.
    if (L.depths.empty() || L.depths[0] != L.n) discipline = false;
    for (std::size_t j = 0; j < L.depths.size(); ++j) {
      if (L.depths[j] <= L.previous) discipline = false;
      if (j && L.depths[j] >= L.depths[j - 1]) discipline = false;
      if (*dist(v, L.vertices[j]) != L.depths[j]) discipline = false;
    }
    // Strict descent: each choice shrinks the stabilizer, ending trivial.
    for (std::size_t j = 1; j < L.orders.size(); ++j)
      if (L.orders[j] >= L.orders[j - 1]) descent = false;
    if (L.orders.empty() || L.orders.back() != 1) descent = false;
  }
  o.check(discipline, "C_i sphere discipline");
  o.check(descent, "C_i strict descent to the trivial group");

  auto rep = verify_distinguishing(c, R, R - kDefaultMargin);
  bool reflection_moved = false;
  for (const auto& off : rep.offenders) {
    o.info("offender " + off.cycles + fmt(" (motion %d)", off.motion));
    if (off.motion > 2) reflection_moved = true;
  }
  o.check(!reflection_moved, "no offender reflects the path");
  o.check(rep.pass, fmt("verify R_outer=%d r_inner=%d: %s", R, R - kDefaultMargin, rep.pass ? "PASS" : "FAIL"));
  const double t = seconds_since(t0);
  o.check(t < kLimitMotion, fmt("runtime %.1f s < %.0f s", t, kLimitMotion));
  return o;
}

Outcome random_colorings() {
  Outcome o;
  const auto t0 = Clock::now();
  {
    auto s = RandomSchedule::parse("harmonic", kMasterSeed);
    auto rep = monte_carlo_distinguishing(regular_tree(3), kTreeRoot, 8, 4, s, kTreeTrials);
    o.check(rep.passes >= 1, fmt("regular_tree(3) R_outer=8 r_inner=4: %d/%d distinguishing trials", rep.passes,
                                 rep.trials));
  }
  {
    const auto g = biinfinite_path();
    auto s = RandomSchedule::parse("harmonic", kMasterSeed);
    // Exact mean and variance of the blue count on B(R): |S(0)| = 1,
    // |S(n)| = 2 otherwise, independent Bernoulli(p_n) colors.
    double mean = 0, var = 0;
    for (int n = 0; n <= kLineRadius; ++n) {
      const double k = n == 0 ? 1 : 2, p = s.p(n);
      mean += k * p;
      var += k * p * (1 - p);
    }
    std::uint64_t state = kMasterSeed;
    const int radii[3] = {250, 500, 1000};
    double total = 0, density[3] = {0, 0, 0};
    for (int t = 0; t < kLineSeeds; ++t) {
      auto c = random_coloring(g, VertexId("0"), kLineRadius, s.with_seed(splitmix64(state)));
      total += static_cast<double>(c.blue.size());
      auto curve = density_profile(c, VertexId("0"), kLineRadius);
      for (int i = 0; i < 3; ++i) density[i] += curve.rows[radii[i]].ratio / kLineSeeds;
    }
    const double sample_mean = total / kLineSeeds;
    const double tol = kSigmas * std::sqrt(var / kLineSeeds);
    o.check(std::abs(sample_mean - mean) <= tol,
            fmt("biinfinite_path R=%d, %d seeds: mean blue %.3f, exact %.3f, tolerance %.3f", kLineRadius, kLineSeeds,
                sample_mean, mean, tol));
    o.check(density[0] > density[1] && density[1] > density[2],
            fmt("mean density at R=250/500/1000: %.5f > %.5f > %.5f", density[0], density[1], density[2]));
  }
  const double t = seconds_since(t0);
  o.check(t < kLimitRandom, fmt("runtime %.1f s < %.0f s", t, kLimitRandom));
  return o;
}

// Brute-force group of f under c, as image arrays.
std::set<std::vector<int>> brute_group(const FiniteGraph& f, const SearchConstraints& c) {
  std::vector<int> p(f.size());
  std::iota(p.begin(), p.end(), 0);
  std::set<std::vector<int>> out;
  do {
    bool ok = true;
    for (auto [u, w] : f.edges())
      if (!f.has_edge(p[u], p[w])) ok = false;
    for (int x : c.fixed_points) ok = ok && p[x] == x;
    if (c.center) ok = ok && p[*c.center] == *c.center;
    for (const auto& s : c.preserved_sets) {
      std::set<int> in(s.begin(), s.end());
      for (int x : s) ok = ok && in.count(p[x]);
    }
    if (ok) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<FiniteGraph> engine_corpus() {
  std::vector<FiniteGraph> out;
  for (int n = 1; n <= 7; ++n) {  // paths
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    out.emplace_back(n, e);
  }
  for (int n = 3; n <= 7; ++n) {  // cycles
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    out.emplace_back(n, e);
  }
  for (int n = 2; n <= 7; ++n) {  // stars
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    out.emplace_back(n, e);
  }
  std::mt19937 rng(2024);
  while (out.size() < 50) {
    const int n = 3 + static_cast<int>(out.size() % 5);
    std::bernoulli_distribution coin(0.2 + 0.1 * (out.size() % 6));
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
      for (int w = u + 1; w < n; ++w)
        if (coin(rng)) e.emplace_back(u, w);
    out.emplace_back(n, e);
  }
  return out;
}

Outcome engine() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto corpus = engine_corpus();
  std::mt19937 rng(7);
  int agree = 0, checks = 0;
  for (const auto& f : corpus) {
    std::vector<SearchConstraints> variants(1);
    const int n = f.size();
    {
      SearchConstraints c;
      c.fixed_points = {static_cast<int>(rng() % n)};
      variants.push_back(c);
    }
    {
      SearchConstraints c;
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (rng() % 2) s.push_back(i);
      c.preserved_sets = {s};
      variants.push_back(c);
    }
    {
      SearchConstraints c;
      c.center = static_cast<int>(rng() % n);
      variants.push_back(c);
    }
    for (const auto& c : variants) {
      ++checks;
      auto r = search_automorphisms(f, c, 100'000);
      std::set<std::vector<int>> got;
      bool certified = r.exhaustive;
      for (const auto& p : r.automorphisms) {
        got.insert(p.images());
        certified = certified && p.certified();
      }
      if (certified && got.size() == r.automorphisms.size() && got == brute_group(f, c)) ++agree;
    }
  }
  o.check(corpus.size() == 50, fmt("corpus of %zu graphs on at most 7 vertices", corpus.size()));
  o.check(agree == checks, fmt("%d/%d searches equal brute-force enumeration", agree, checks));
  const double t = seconds_since(t0);
  o.check(t < kLimitEngine, fmt("runtime %.1f s < %.0f s", t, kLimitEngine));
  return o;
}

Outcome transfer() {
  Outcome o;
  auto c = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  auto b = ball(grid2d(), VertexId("0,0"), 3);
  std::size_t rows = 0, violations = 0;
  for (const auto& x : b.vertices()) {
    auto rep = growth_ratio_transfer(c, x);
    rows += rep.rows.size();
    violations += rep.violations();
    if (rep.violations()) o.info(fmt("x=%s: %zu violations", x.str().c_str(), rep.violations()));
  }
  o.check(violations == 0, fmt("%zu sampled x with d(v,x) <= 3, %zu rows, %zu violations", b.size(), rows, violations));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double limit = 0;  // 0: no runtime bound beyond the default
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "chain length formula", chain_length, kLimitChain},
      {2, "example graph counts", example_counts, kLimitExampleCounts},
      {3, "example graph forced pairs", example_forced_pairs},
      {4, "distinct-spheres colorings", dsc_colorings},
      {5, "distinct-spheres checker", dsc_discrimination},
      {6, "motion and growth coloring", motion},
      {7, "random colorings", random_colorings},
      {8, "automorphism engine soundness", engine},
      {9, "growth ratio transfer", transfer},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (c.limit > 0) o.check(t < c.limit, fmt("runtime %.1f s < %.0f s", t, c.limit));
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, t);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
