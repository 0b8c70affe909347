#include <filesystem>

#include "doctest.h"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"
#include "symbreak/io.hpp"

using namespace symbreak;

TEST_CASE("coloring json round trip") {
  auto c = dsc_coloring_relaxed(regular_tree(3), kTreeRoot, 2, 40, 2);
  auto j = to_json(c);
  CHECK(j["family"] == "family=regular_tree d=3");
  CHECK(j["metadata"]["blue_count"] == c.blue.size());
  auto back = coloring_from_json(Json::parse(j.dump()));
  CHECK(back.blue == c.blue);
  CHECK(back.root == c.root);
  CHECK(back.radius == c.radius);
  CHECK(back.anchor == c.anchor);
  CHECK(back.strategy == c.strategy);
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("motion coloring json keeps levels") {
  auto c = motion_growth_coloring(twin_leaf_path(), VertexId("5"), Rational::parse("1/4"), 60);
  auto back = coloring_from_json(to_json(c));
  CHECK(back.levels.size() == c.levels.size());
  CHECK(to_json(back).dump() == to_json(c).dump());
}

TEST_CASE("malformed coloring json is rejected") {
  CHECK_THROWS(coloring_from_json(Json::parse(R"({"root": "0"})")));
  auto j = to_json(explicit_coloring(grid2d(), VertexId("0,0"), 2, {VertexId("1,0")}));
  j["blue"].push_back("x,y");
  CHECK_THROWS(coloring_from_json(j));
}

TEST_CASE("csv and dot writers") {
  auto p = growth_profile(grid2d(), VertexId("0,0"), 3);
  auto csv = growth_csv(p);
  CHECK(csv.rfind("n,sphere,ball,ratio\n", 0) == 0);
  CHECK(csv.find("\n3,12,25,") != std::string::npos);
  auto b = ball(biinfinite_path(), VertexId("0"), 1);
  auto c = explicit_coloring(biinfinite_path(), VertexId("0"), 1, {VertexId("1")});
  auto dot = ball_dot(b, &c);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find(" -- ") != std::string::npos);
}

TEST_CASE("atomic writes") {
  auto dir = std::filesystem::temp_directory_path() / "symbreak_io_test";
  std::filesystem::create_directories(dir);
  write_atomic(dir / "a.txt", "hello\n");
  CHECK(read_file(dir / "a.txt") == "hello\n");
  write_atomic(dir / "a.txt", "bye\n");
  CHECK(read_file(dir / "a.txt") == "bye\n");
  std::filesystem::remove_all(dir);
}
