#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"
#include "symbreak/io.hpp"

namespace symbreak::cli {

namespace {

namespace fs = std::filesystem;

// Keys that configure the run itself; every other config key belongs to the
// family spec.
const std::vector<std::string> kRunKeys = {"root",  "radius", "r-pairs",  "r-inner", "r-outer", "strategy",
                                           "epsilon", "schedule", "seed", "trials",  "out",     "budget",
                                           "cap",   "gap",    "margin",   "threads", "coloring"};

bool is_run_key(const std::string& k) { return std::find(kRunKeys.begin(), kRunKeys.end(), k) != kRunKeys.end(); }

std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Settings {
  std::map<std::string, std::string> run;
  std::map<std::string, std::string> family;

  void load_file(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ArgumentError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  void set(const std::string& raw_key, const std::string& value) {
    const std::string k = normalize_key(raw_key);
    if (is_run_key(k))
      run[k] = value;
    else
      family[raw_key] = value;
  }

  bool has(const std::string& k) const { return run.count(k) != 0; }

  std::string str(const std::string& k, const std::string& def = "") const {
    auto it = run.find(k);
    return it == run.end() ? def : it->second;
  }

  std::int64_t integer(const std::string& k) const {
    auto it = run.find(k);
    if (it == run.end()) throw ArgumentError("missing required setting --" + k);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ArgumentError("--" + k + " expects an integer, got '" + it->second + "'");
    }
  }
  std::int64_t integer(const std::string& k, std::int64_t def) const { return has(k) ? integer(k) : def; }

  std::uint64_t seed() const {
    if (!has("seed")) throw ArgumentError("--seed is required for randomized runs");
    const std::string& s = run.at("seed");
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(s, &used);
      if (used != s.size() || s.front() == '-') throw std::invalid_argument("bad");
      return v;
    } catch (const std::exception&) {
      throw ArgumentError("--seed expects a nonnegative integer, got '" + s + "'");
    }
  }

  std::size_t budget() const {
    return has("budget") ? static_cast<std::size_t>(positive("budget")) : default_vertex_budget();
  }
  std::size_t cap() const { return has("cap") ? static_cast<std::size_t>(positive("cap")) : kDefaultNodeCap; }

  std::int64_t positive(const std::string& k) const {
    const auto v = integer(k);
    if (v < 1) throw ArgumentError("--" + k + " must be positive");
    return v;
  }
  int radius(const std::string& k) const {
    const auto v = integer(k);
    if (v < 0 || v > 1'000'000) throw ArgumentError("--" + k + " out of range");
    return static_cast<int>(v);
  }
  int radius(const std::string& k, int def) const { return has(k) ? radius(k) : def; }
};

struct Context {
  Settings settings;
  GraphHandle graph;
  VertexId root;
  fs::path out_dir;
  std::string command;
  std::ostream* out;
};

void write_metadata(const Context& ctx, const std::vector<std::string>& files) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ");
  Json j;
  j["command"] = ctx.command;
  j["timestamp"] = stamp.str();
  j["family"] = ctx.graph ? ctx.graph.spec_string() : "";
  j["settings"] = ctx.settings.run;
  j["files"] = files;
  write_atomic(ctx.out_dir / (ctx.command + ".meta.json"), j.dump(2) + "\n");
}

void emit(const Context& ctx, const std::string& name, const std::string& content, std::vector<std::string>& files) {
  write_atomic(ctx.out_dir / name, content);
  files.push_back(name);
}

int cmd_generate(Context& ctx) {
  const int R = ctx.settings.radius("radius");
  const BallView b = ball(ctx.graph, ctx.root, R, ctx.settings.budget());
  std::optional<Coloring> coloring;
  if (ctx.settings.has("coloring"))
    coloring = coloring_from_json(Json::parse(read_file(ctx.settings.str("coloring"))));
  std::vector<std::string> files;
  emit(ctx, "ball.dot", ball_dot(b, coloring ? &*coloring : nullptr), files);
  emit(ctx, "ball.json", to_json(b).dump(2) + "\n", files);
  write_metadata(ctx, files);
  *ctx.out << "ball around " << ctx.root << " radius " << R << ": " << b.size() << " vertices, " << b.edges().size()
           << " edges\n";
  return kOk;
}

int cmd_check_dsc(Context& ctx) {
  const int R = ctx.settings.radius("radius");
  const int r_pairs = ctx.settings.radius("r-pairs");
  const auto rep = check_dsc(ctx.graph, ctx.root, r_pairs, R, ctx.settings.budget());
  std::vector<std::string> files;
  emit(ctx, "dsc_report.json", to_json(rep).dump(2) + "\n", files);
  write_metadata(ctx, files);
  *ctx.out << rep.pairs.size() << " equidistant pairs within " << r_pairs << " of " << ctx.root << ", "
           << rep.failures() << " without a witness up to depth " << R << "\n";
  for (const auto& p : rep.pairs)
    if (p.failed()) *ctx.out << "  FAIL {" << p.u << ", " << p.w << "}\n";
  return rep.all_witnessed() ? kOk : kDscFail;
}

int cmd_color(Context& ctx) {
  const auto& s = ctx.settings;
  const int R = s.radius("radius");
  const std::string strategy = s.str("strategy", "dsc-relaxed");
  const std::size_t budget = s.budget();
  Coloring c;
  if (strategy == "dsc" || strategy == "dsc-relaxed") {
    const int r_pairs = s.radius("r-pairs", 2);
    if (r_pairs > R) throw ArgumentError("--r-pairs must not exceed --radius");
    DscOptions opts;
    opts.budget = budget;
    if (strategy == "dsc")
      c = dsc_coloring(ctx.graph, ctx.root, r_pairs, R, opts);
    else
      c = dsc_coloring_relaxed(ctx.graph, ctx.root, r_pairs, R, static_cast<int>(s.integer("gap", 2)), opts);
  } else if (strategy == "random") {
    c = random_coloring(ctx.graph, ctx.root, R, RandomSchedule::parse(s.str("schedule", "harmonic"), s.seed()), budget);
  } else if (strategy == "motion-growth") {
    MotionOptions opts;
    opts.margin = static_cast<int>(s.integer("margin", kDefaultMargin));
    opts.node_cap = s.cap();
    opts.budget = budget;
    c = motion_growth_coloring(ctx.graph, ctx.root, Rational::parse(s.str("epsilon", "1/4")), R, opts);
  } else {
    throw ArgumentError("unknown strategy '" + strategy + "' (dsc, dsc-relaxed, random, motion-growth)");
  }
  // The curve stops at --r-outer when given, and earlier if the ball would
  // not fit the budget (witness colorings on trees reach far past that).
  int curve_radius = s.radius("r-outer", R);
  if (curve_radius > R) throw ArgumentError("--r-outer must not exceed --radius");
  try {
    ball(ctx.graph, ctx.root, curve_radius, budget);
  } catch (const BudgetExceeded&) {
    int fits = 0;
    try {
      while (fits < curve_radius) {
        ball(ctx.graph, ctx.root, fits + 1, budget);
        ++fits;
      }
    } catch (const BudgetExceeded&) {
    }
    c.notes.push_back("density curve cut at radius " + std::to_string(fits) + " by the vertex budget");
    curve_radius = fits;
  }
  const auto curve = density_profile(c, ctx.root, curve_radius, budget);
  std::vector<std::string> files;
  emit(ctx, "coloring.json", to_json(c).dump(2) + "\n", files);
  emit(ctx, "density.csv", density_csv(curve), files);
  write_metadata(ctx, files);
  *ctx.out << strategy << " coloring of B_" << ctx.root << "(" << R << "): " << c.blue.size() << " blue vertices, "
           << "density " << curve.rows.back().ratio << " at radius " << curve_radius << "\n";
  for (const auto& n : c.notes) *ctx.out << "  note: " << n << "\n";
  return kOk;
}

int cmd_verify(Context& ctx) {
  const auto& s = ctx.settings;
  if (!s.has("coloring")) throw ArgumentError("verify needs --coloring FILE");
  const Coloring c = coloring_from_json(Json::parse(read_file(s.str("coloring"))));
  ctx.graph = c.graph;
  VerifyOptions opts;
  opts.margin = static_cast<int>(s.integer("margin", kDefaultMargin));
  opts.node_cap = s.cap();
  opts.budget = s.budget();
  const int R_outer = s.radius("r-outer", c.radius);
  const int r_inner = s.radius("r-inner");
  const auto rep = verify_distinguishing(c, R_outer, r_inner, opts);
  std::vector<std::string> files;
  emit(ctx, "verify_report.json", to_json(rep).dump(2) + "\n", files);
  write_metadata(ctx, files);
  *ctx.out << (rep.pass ? "PASS" : "FAIL") << ": B(" << r_inner << ") inside B(" << R_outer << ") of " << c.root
           << ", " << rep.ball_size << " vertices, " << rep.blue_in_ball << " blue\n";
  for (const auto& o : rep.offenders) *ctx.out << "  offender " << o.cycles << "\n";
  return rep.pass ? kOk : kVerifyFail;
}

int cmd_montecarlo(Context& ctx) {
  const auto& s = ctx.settings;
  const auto schedule = RandomSchedule::parse(s.str("schedule", "harmonic"), s.seed());
  VerifyOptions opts;
  opts.margin = static_cast<int>(s.integer("margin", kDefaultMargin));
  opts.node_cap = s.cap();
  opts.budget = s.budget();
  const int R_outer = s.radius("r-outer");
  const int r_inner = s.radius("r-inner");
  const int trials = static_cast<int>(s.positive("trials"));
  const auto rep = monte_carlo_distinguishing(ctx.graph, ctx.root, R_outer, r_inner, schedule, trials,
                                              static_cast<unsigned>(s.integer("threads", 0)), opts);
  std::vector<std::string> files;
  emit(ctx, "montecarlo.json", to_json(rep).dump(2) + "\n", files);
  emit(ctx, "montecarlo.csv", montecarlo_csv(rep), files);
  write_metadata(ctx, files);
  *ctx.out << rep.passes << " of " << rep.trials << " random colorings distinguishing (estimate " << rep.estimate()
           << ")\n";
  return kOk;
}

void add_common(CLI::App* sub, std::map<std::string, std::string>& flags, std::vector<std::string>& params,
                std::string& config) {
  sub->add_option("--config", config, "key=value file; flags override it");
  sub->add_option("--param", params, "family parameter k=v (repeatable)");
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"family", "graph family (regular_tree, biinfinite_path, grid2d, cartesian_product, example_graph, "
                      "twin_leaf_path, finite_adjacency)"},
           {"root", "root vertex encoding"},
           {"radius", "ball or construction radius"},
           {"r-pairs", "radius holding the equidistant pairs"},
           {"r-inner", "inner radius that must be fixed pointwise"},
           {"r-outer", "radius of the verified truncation"},
           {"strategy", "dsc, dsc-relaxed, random or motion-growth"},
           {"epsilon", "epsilon for motion-growth, e.g. 1/4"},
           {"schedule", "zero, harmonic, power:a"},
           {"seed", "master seed"},
           {"trials", "Monte Carlo trials"},
           {"out", "output directory"},
           {"budget", "vertex budget"},
           {"cap", "automorphism search node cap"},
           {"gap", "witness spacing for dsc-relaxed"},
           {"margin", "outer minus inner radius"},
           {"threads", "worker threads for Monte Carlo"},
           {"coloring", "coloring JSON file"}})
    sub->add_option("--" + name, flags[name], help);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distinguishing 2-colorings of infinite graphs on finite truncations", "symbreak"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::vector<std::string>> params;
  std::map<std::string, std::string> configs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"generate", "write a ball as DOT and JSON"},
      {"check-dsc", "check the distinct spheres condition around a root"},
      {"color", "build a coloring and its density curve"},
      {"verify", "check that a coloring is distinguishing on a truncation"},
      {"montecarlo", "estimate how often random colorings are distinguishing"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags[name], params[name], configs[name]);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Context ctx;
  ctx.out = &out;
  ctx.command = app.get_subcommands().front()->get_name();
  try {
    auto* sub = app.get_subcommands().front();
    if (!configs[ctx.command].empty()) ctx.settings.load_file(configs[ctx.command]);
    for (const auto& [name, value] : flags[ctx.command]) {
      if (sub->get_option("--" + name)->count() == 0) continue;
      if (name == "family")
        ctx.settings.family["family"] = value;
      else
        ctx.settings.run[name] = value;
    }
    for (const auto& p : params[ctx.command]) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw ArgumentError("--param expects k=v, got '" + p + "'");
      ctx.settings.family[p.substr(0, eq)] = p.substr(eq + 1);
    }
    ctx.out_dir = ctx.settings.str("out", ".");

    if (ctx.command == "verify") {
      // The coloring file names its own graph and root.
      return cmd_verify(ctx);
    }
    if (!ctx.settings.family.count("family")) throw ArgumentError("--family is required");
    ctx.graph = make_generator(family_spec_from_map(ctx.settings.family));
    if (ctx.settings.has("root")) {
      ctx.root = VertexId(ctx.settings.str("root"));
    } else if (auto r = ctx.graph.root()) {
      ctx.root = *r;
    } else {
      throw ArgumentError("--root is required for family " + ctx.graph.family_name());
    }
    ctx.graph.validate(ctx.root);

    if (ctx.command == "generate") return cmd_generate(ctx);
    if (ctx.command == "check-dsc") return cmd_check_dsc(ctx);
    if (ctx.command == "color") return cmd_color(ctx);
    return cmd_montecarlo(ctx);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kLimit;
  } catch (const SearchCapExceeded& e) {
    err << "error: " << e.what() << " (" << e.partial_count() << " found before stopping)\n";
    return kLimit;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad JSON input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace symbreak::cli
