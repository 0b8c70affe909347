#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"

using namespace symbreak;

namespace {

std::map<int, int> blue_per_depth(const Coloring& c) {
  Metric dist(c.graph, c.radius);
  std::map<int, int> out;
  for (const auto& x : c.blue) out[*dist(c.root, x)]++;
  return out;
}

// Blue vertices whose neighbors include another blue vertex.
int blue_edges(const Coloring& c) {
  int k = 0;
  for (const auto& x : c.blue)
    for (const auto& y : neighbors(c.graph, x))
      if (c.is_blue(y) && x < y) ++k;
  return k;
}

}  // namespace

TEST_CASE("dsc coloring invariants on the tree") {
  auto g = regular_tree(3);
  Metric dist(g, 100);
  auto c = dsc_coloring_relaxed(g, kTreeRoot, 2, 40, 2);
  REQUIRE(c.anchor.size() == 3);
  CHECK(c.anchor[0] == kTreeRoot);
  CHECK(*dist(kTreeRoot, c.anchor[1]) == 2);
  CHECK(*dist(kTreeRoot, c.anchor[2]) == 3);
  CHECK(blue_edges(c) == 1);  // only a-b
  CHECK(c.witnesses.size() == 3 + 15);
  std::set<int> depths;
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    const auto& pw = c.witnesses[i];
    CHECK(pw.depth >= 2 * static_cast<int>(i + 1));
    CHECK(pw.depth > 3);
    CHECK(depths.insert(pw.depth).second);
    auto du = dist(pw.u, pw.x), dw = dist(pw.w, pw.x);
    CHECK(*du != *dw);
    CHECK(c.is_blue(pw.x));
  }
  CHECK(c.blue.size() == 3 + c.witnesses.size());
  auto per = blue_per_depth(c);
  for (auto [d, k] : per)
    if (d > 3) CHECK(k == 1);
}

TEST_CASE("dsc coloring is deterministic") {
  auto a = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  auto b = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  CHECK(a.blue == b.blue);
  CHECK(a.anchor == b.anchor);
}

TEST_CASE("strict dsc coloring on the line uses the quadratic depths") {
  auto c = dsc_coloring(biinfinite_path(), VertexId("0"), 3, 100);
  REQUIRE(c.witnesses.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.witnesses[i].depth >= 7 * static_cast<int>((i + 1) * (i + 1)));
  CHECK(c.blue.size() == 6);
  CHECK_THROWS_AS(dsc_coloring(biinfinite_path(), VertexId("0"), 3, 50), WitnessExhausted);
}

TEST_CASE("dsc coloring refuses pairs without witnesses") {
  CHECK_THROWS_AS(dsc_coloring_relaxed(twin_leaf_path(), VertexId("0"), 1, 30, 2), PreconditionError);
  CHECK_THROWS_AS(dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 3, 3, 2), WitnessExhausted);
  CHECK_THROWS_AS(dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 3, 2, 2), ArgumentError);
}

TEST_CASE("dsc coloring is distinguishing on the tree and grid") {
  auto tree = dsc_coloring_relaxed(regular_tree(3), kTreeRoot, 2, 40, 2);
  CHECK(verify_distinguishing(tree, 8, 2).pass);
  auto grid = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  CHECK(verify_distinguishing(grid, 40, 2).pass);
}

TEST_CASE("uncolored balls are not distinguished") {
  auto c = explicit_coloring(grid2d(), VertexId("0,0"), 6, {});
  auto rep = verify_distinguishing(c, 6, 1);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.offenders.empty());
  for (const auto& o : rep.offenders) CHECK(o.motion > 0);
  CHECK_THROWS_AS(explicit_coloring(grid2d(), VertexId("0,0"), 2, {VertexId("5,5")}), ArgumentError);
  CHECK_THROWS_AS(verify_distinguishing(c, 6, 3), ArgumentError);
}

TEST_CASE("random schedules") {
  auto h = RandomSchedule::parse("harmonic", 7);
  CHECK(h.p(0) == doctest::Approx(1.0));
  CHECK(h.p(3) == doctest::Approx(0.25));
  CHECK(h.divergent());
  auto p = RandomSchedule::parse("power:0.5", 1);
  CHECK(p.p(3) == doctest::Approx(0.5));
  CHECK_FALSE(RandomSchedule::parse("zero", 1).divergent());
  CHECK_FALSE(RandomSchedule::parse("constant:0", 1).divergent());
  CHECK_THROWS_AS(RandomSchedule::parse("constant:1", 1), ScheduleInvalid);
  CHECK_THROWS_AS(RandomSchedule::parse("power:2", 1), ScheduleInvalid);
  CHECK_THROWS_AS(RandomSchedule::parse("power:0", 1), ScheduleInvalid);
  CHECK_THROWS_AS(RandomSchedule::parse("geometric", 1), ScheduleInvalid);
  for (int n = 0; n < 50; ++n) CHECK(h.p(n + 1) <= h.p(n));
}

TEST_CASE("random coloring") {
  auto g = grid2d();
  auto s = RandomSchedule::parse("harmonic", 11);
  auto a = random_coloring(g, VertexId("0,0"), 20, s);
  auto b = random_coloring(g, VertexId("0,0"), 20, s);
  CHECK(a.blue == b.blue);
  CHECK(a.is_blue(VertexId("0,0")));  // p_0 = 1
  auto other = random_coloring(g, VertexId("0,0"), 20, s.with_seed(12));
  CHECK(other.blue != a.blue);
  CHECK(random_coloring(g, VertexId("0,0"), 20, RandomSchedule::parse("zero", 1)).blue.empty());
  // Each color depends only on (seed, vertex), so overlapping balls agree.
  auto shifted = random_coloring(g, VertexId("3,0"), 20, s);
  for (const auto& x : shifted.blue)
    if (*distance(g, VertexId("0,0"), x, 100) <= 20) CHECK(a.is_blue(x) == (vertex_uniform(11, x) < s.p(*distance(g, VertexId("0,0"), x, 100))));
  double u = vertex_uniform(3, VertexId("1,2"));
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("vertex uniforms look uniform") {
  const int n = 20000;
  double sum = 0;
  int low = 0;
  for (int i = 0; i < n; ++i) {
    double u = vertex_uniform(99, VertexId(std::to_string(i)));
    sum += u;
    if (u < 0.1) ++low;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
  CHECK(std::abs(low / double(n) - 0.1) < 0.01);
}

TEST_CASE("density profile bounds") {
  auto c = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  auto curve = density_profile(c, VertexId("0,0"), 80);
  REQUIRE(curve.rows.size() == 81);
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    const auto& r = curve.rows[i];
    CHECK(r.ball == 2 * i * i + 2 * i + 1);
    CHECK(r.blue <= r.ball);
    CHECK(r.ratio == doctest::Approx(double(r.blue) / r.ball));
    if (i) CHECK(r.blue >= curve.rows[i - 1].blue);
  }
  CHECK(curve.rows.back().blue == c.blue.size());
  CHECK_THROWS_AS(density_profile(c, VertexId("0,0"), 81), ArgumentError);
}

TEST_CASE("growth ratio transfer on the grid") {
  auto c = dsc_coloring_relaxed(grid2d(), VertexId("0,0"), 2, 80, 2);
  auto rep = growth_ratio_transfer(c, VertexId("2,1"));
  CHECK(rep.d == 3);
  CHECK(rep.rows.size() == 78);
  CHECK(rep.violations() == 0);
  CHECK(rep.c > 1.0);
  auto self = growth_ratio_transfer(c, VertexId("0,0"));
  CHECK(self.d == 0);
  CHECK(self.k == doctest::Approx(1.0));
  CHECK(self.violations() == 0);
  for (const auto& r : self.rows) CHECK(r.blue_x == r.blue_v);
}

TEST_CASE("motion coloring on the line with twins") {
  auto c = motion_growth_coloring(twin_leaf_path(), VertexId("5"), Rational::parse("1/4"), 60);
  CHECK(c.is_blue(VertexId("5")));
  CHECK(c.is_blue(VertexId("0")));
  CHECK(c.is_blue(VertexId("1")));
  CHECK(c.is_blue(VertexId("-1")));
  REQUIRE_FALSE(c.levels.empty());
  for (const auto& L : c.levels) {
    CHECK(L.n > 0);
    CHECK(L.n <= 60 - kDefaultMargin);
    CHECK(L.orders.size() == L.vertices.size() + 1);
    // x_0 is forced when nothing on the sphere moves; every later choice
    // is a moved vertex and shrinks the stabilizer.
    for (std::size_t j = L.forced_choice ? 2 : 1; j < L.orders.size(); ++j) CHECK(L.orders[j] < L.orders[j - 1]);
    if (L.sphere_collisions == 0) CHECK(L.orders.back() == 1);
    for (std::size_t j = 1; j < L.depths.size(); ++j) CHECK(L.depths[j] < L.depths[j - 1]);
    for (auto d : L.depths) CHECK(d > L.previous);
  }
}

TEST_CASE("motion coloring preconditions") {
  auto eps = Rational::parse("1/4");
  CHECK_THROWS_AS(motion_growth_coloring(biinfinite_path(), VertexId("0"), eps, 40), StructureError);
  CHECK_THROWS_AS(motion_growth_coloring(grid2d(), VertexId("0,0"), eps, 20), PreconditionError);
}
