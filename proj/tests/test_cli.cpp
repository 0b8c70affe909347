#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "symbreak/io.hpp"

using namespace symbreak;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("symbreak_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cli exit codes") {
  auto dir = scratch("codes");
  CHECK(run({"generate", "--family", "biinfinite_path", "--radius", "5", "--out", dir.string()}).code == cli::kOk);
  CHECK(fs::exists(dir / "ball.json"));
  CHECK(run({"check-dsc", "--family", "twin_leaf_path", "--r-pairs", "1", "--radius", "10", "--out", dir.string()})
            .code == cli::kDscFail);
  CHECK(run({"check-dsc", "--family", "regular_tree", "--param", "d=3", "--r-pairs", "2", "--radius", "6", "--out",
             dir.string()})
            .code == cli::kOk);
  CHECK(run({"montecarlo", "--family", "grid2d", "--trials", "3", "--r-outer", "4", "--r-inner", "0", "--out",
             dir.string()})
            .code == cli::kUsage);
  CHECK(run({"generate", "--family", "grid2d", "--radius", "5000", "--budget", "100", "--out", dir.string()}).code ==
        cli::kLimit);
  CHECK(run({"generate", "--family", "nosuch", "--radius", "2", "--out", dir.string()}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code != cli::kOk);
  fs::remove_all(dir);
}

TEST_CASE("cli color then verify") {
  auto dir = scratch("verify");
  auto r = run({"color", "--family", "regular_tree", "--param", "d=3", "--strategy", "dsc-relaxed", "--r-pairs", "2",
                "--radius", "40", "--r-outer", "8", "--out", dir.string()});
  REQUIRE(r.code == cli::kOk);
  auto col = (dir / "coloring.json").string();
  CHECK(run({"verify", "--coloring", col, "--r-outer", "8", "--r-inner", "2", "--out", dir.string()}).code ==
        cli::kOk);
  auto rep = Json::parse(read_file(dir / "verify_report.json"));
  CHECK(rep["verdict"] == "PASS");

  CHECK(run({"verify", "--coloring", col, "--r-outer", "8", "--r-inner", "9", "--out", dir.string()}).code ==
        cli::kUsage);
  fs::remove_all(dir);
}

TEST_CASE("cli outputs are reproducible") {
  auto a = scratch("rep_a"), b = scratch("rep_b");
  for (const auto& d : {a, b}) {
    REQUIRE(run({"montecarlo", "--family", "regular_tree", "--param", "d=3", "--schedule", "harmonic", "--seed", "5",
                 "--trials", "6", "--r-outer", "6", "--r-inner", "1", "--threads", d == a ? "1" : "3", "--out",
                 d.string()})
                .code <= cli::kVerifyFail);
    REQUIRE(run({"color", "--family", "grid2d", "--radius", "80", "--r-outer", "20", "--out", d.string()}).code ==
            cli::kOk);
  }
  for (auto name : {"montecarlo.json", "montecarlo.csv", "coloring.json", "density.csv"})
    CHECK(read_file(a / name) == read_file(b / name));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("cli config files") {
  auto dir = scratch("config");
  write_atomic(dir / "run.cfg", "# comment\nfamily=regular_tree\nd=3\nr_pairs=2\nradius=5\n");
  CHECK(run({"check-dsc", "--config", (dir / "run.cfg").string(), "--out", dir.string()}).code == cli::kOk);
  auto rep = Json::parse(read_file(dir / "dsc_report.json"));
  CHECK(rep["R"] == 5);
  CHECK(run({"check-dsc", "--config", (dir / "run.cfg").string(), "--radius", "6", "--out", dir.string()}).code ==
        cli::kOk);
  CHECK(Json::parse(read_file(dir / "dsc_report.json"))["R"] == 6);
  fs::remove_all(dir);
}
