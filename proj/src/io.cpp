#include "symbreak/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"

namespace symbreak {

namespace {

Json ids(const auto& range) {
  Json out = Json::array();
  for (const auto& x : range) out.push_back(x.str());
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

Json to_json(const Coloring& c) {
  Json j;
  j["family"] = c.graph.spec_string();
  j["root"] = c.root.str();
  j["radius"] = c.radius;
  j["strategy"] = c.strategy;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : c.parameters) j["parameters"][k] = v;
  j["anchor"] = ids(c.anchor);
  j["blue"] = ids(c.blue);
  Json meta = Json::object();
  meta["blue_count"] = c.blue.size();
  if (!c.witnesses.empty()) {
    Json ws = Json::array();
    for (const auto& w : c.witnesses)
      ws.push_back({{"pair", {w.u.str(), w.w.str()}}, {"x", w.x.str()}, {"depth", w.depth}});
    meta["witnesses"] = std::move(ws);
  }
  if (!c.levels.empty()) {
    Json ls = Json::array();
    for (const auto& l : c.levels)
      ls.push_back({{"n", l.n},
                    {"previous", l.previous},
                    {"vertices", ids(l.vertices)},
                    {"depths", l.depths},
                    {"orders", l.orders},
                    {"forced_choice", l.forced_choice},
                    {"sphere_collisions", l.sphere_collisions}});
    meta["levels"] = std::move(ls);
  }
  meta["notes"] = c.notes;
  j["metadata"] = std::move(meta);
  return j;
}

Coloring coloring_from_json(const Json& j) {
  try {
    Coloring c;
    c.graph = make_generator(j.at("family").get<std::string>());
    c.root = VertexId(j.at("root").get<std::string>());
    c.radius = j.at("radius").get<int>();
    c.strategy = j.at("strategy").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) c.parameters[k] = v.get<std::string>();
    for (const auto& a : j.at("anchor")) c.anchor.emplace_back(a.get<std::string>());
    for (const auto& b : j.at("blue")) c.blue.emplace(b.get<std::string>());
    if (j.contains("metadata")) {
      const auto& m = j["metadata"];
      if (m.contains("witnesses"))
        for (const auto& w : m["witnesses"])
          c.witnesses.push_back({VertexId(w.at("pair").at(0).get<std::string>()),
                                 VertexId(w.at("pair").at(1).get<std::string>()),
                                 VertexId(w.at("x").get<std::string>()), w.at("depth").get<int>()});
      if (m.contains("levels"))
        for (const auto& l : m["levels"]) {
          DescentLevel d;
          d.n = l.at("n").get<int>();
          d.previous = l.at("previous").get<int>();
          for (const auto& x : l.at("vertices")) d.vertices.emplace_back(x.get<std::string>());
          d.depths = l.at("depths").get<std::vector<int>>();
          d.orders = l.at("orders").get<std::vector<std::size_t>>();
          d.forced_choice = l.at("forced_choice").get<bool>();
          d.sphere_collisions = l.at("sphere_collisions").get<std::size_t>();
          c.levels.push_back(std::move(d));
        }
      if (m.contains("notes")) c.notes = m["notes"].get<std::vector<std::string>>();
    }
    for (const auto& x : c.blue) c.graph.validate(x);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed coloring JSON: ") + e.what());
  }
}

Json to_json(const DscReport& r) {
  Json j;
  j["root"] = r.root.str();
  j["r_pairs"] = r.r_pairs;
  j["R"] = r.R;
  j["eccentricity_lower_bound"] = r.eccentricity_lower_bound;
  j["pair_count"] = r.pairs.size();
  j["failures"] = r.failures();
  Json ps = Json::array();
  for (const auto& p : r.pairs) {
    Json e{{"u", p.u.str()}, {"w", p.w.str()}, {"depth", p.depth}};
    if (p.failed()) {
      e["outcome"] = "FAIL";
    } else {
      e["outcome"] = "witnessed";
      e["first_depth"] = *p.first_depth;
      e["witness_depths"] = p.witness_depths;
    }
    ps.push_back(std::move(e));
  }
  j["pairs"] = std::move(ps);
  return j;
}

Json to_json(const GrowthProfile& p) {
  return {{"root", p.root.str()},  {"R", p.R},
          {"sphere", p.sphere},    {"ball", p.ball},
          {"ratio_bound", p.ratio_bound}, {"ratio_at", p.ratio_at}};
}

Json to_json(const DensityCurve& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back({{"n", r.n}, {"blue", r.blue}, {"ball", r.ball}, {"ratio", r.ratio}});
  return {{"root", c.root.str()}, {"rows", std::move(rows)}};
}

Json to_json(const TransferReport& r) {
  Json rows = Json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"n", x.n},
                    {"blue_x", x.blue_x},
                    {"ball_x", x.ball_x},
                    {"blue_v", x.blue_v},
                    {"ball_v", x.ball_v},
                    {"count_ok", x.count_ok},
                    {"size_ok", x.size_ok}});
  return {{"v", r.v.str()}, {"w", r.w.str()}, {"x", r.x.str()}, {"d", r.d},
          {"c", r.c},       {"k", r.k},       {"violations", r.violations()}, {"rows", std::move(rows)}};
}

Json to_json(const VerifyReport& r) {
  Json offs = Json::array();
  for (const auto& o : r.offenders)
    offs.push_back({{"cycles", o.cycles}, {"motion", o.motion}, {"moved_inner", ids(o.moved_targets)}});
  return {{"verdict", r.pass ? "PASS" : "FAIL"},
          {"R_outer", r.R_outer},
          {"r_inner", r.r_inner},
          {"ball_size", r.ball_size},
          {"inner_size", r.inner_size},
          {"blue_in_ball", r.blue_in_ball},
          {"search_nodes", r.nodes},
          {"offenders", std::move(offs)}};
}

Json to_json(const MonteCarloReport& r) {
  std::vector<int> passed(r.passed.begin(), r.passed.end());
  return {{"R_outer", r.R_outer},       {"r_inner", r.r_inner},         {"schedule", r.schedule},
          {"master_seed", r.master_seed}, {"trials", r.trials},         {"passes", r.passes},
          {"estimate", r.estimate()},   {"seeds", r.seeds},             {"passed", passed},
          {"blue_counts", r.blue_counts}, {"mean_density", r.mean_density}};
}

Json to_json(const BallView& b) {
  Json vs = Json::array();
  for (int i = 0; i < static_cast<int>(b.size()); ++i) vs.push_back({{"id", b.vertex(i).str()}, {"d", b.distance(i)}});
  Json es = Json::array();
  for (auto [u, w] : b.edges()) es.push_back({u, w});
  return {{"root", b.root().str()}, {"radius", b.radius()}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

std::string growth_csv(const GrowthProfile& p) {
  std::ostringstream out;
  out << "n,sphere,ball,ratio\n";
  for (int n = 0; n <= p.R; ++n) {
    out << n << ',' << p.sphere[n] << ',' << p.ball[n] << ',';
    if (n < p.R) out << fmt(p.ratio(n));
    out << '\n';
  }
  return out.str();
}

std::string density_csv(const DensityCurve& c) {
  std::ostringstream out;
  out << "n,blue_count,ball_count,ratio\n";
  for (const auto& r : c.rows) out << r.n << ',' << r.blue << ',' << r.ball << ',' << fmt(r.ratio) << '\n';
  return out.str();
}

std::string montecarlo_csv(const MonteCarloReport& r) {
  std::ostringstream out;
  out << "n,mean_density\n";
  for (std::size_t n = 0; n < r.mean_density.size(); ++n) out << n << ',' << fmt(r.mean_density[n]) << '\n';
  return out.str();
}

std::string ball_dot(const BallView& b, const Coloring* coloring) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + '"';
  };
  std::ostringstream out;
  out << "graph ball {\n";
  for (int i = 0; i < static_cast<int>(b.size()); ++i) {
    out << "  " << i << " [label=" << quote(b.vertex(i).str()) << ", depth=" << b.distance(i);
    if (coloring) out << ", style=filled, fillcolor=" << (coloring->is_blue(b.vertex(i)) ? "blue" : "red");
    out << "];\n";
  }
  for (auto [u, w] : b.edges()) out << "  " << u << " -- " << w << ";\n";
  out << "}\n";
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace symbreak
