#include "symbreak/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "symbreak/errors.hpp"

namespace symbreak {
namespace {

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int value{};
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  // Reject non-canonical spellings ("+1", "007", "-0") so that equal
  // vertices always have equal encodings.
  if (std::to_string(value) != s) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_id(const std::string& family, const VertexId& v) {
  throw IdentifierError("malformed " + family + " vertex '" + v.str() + "'");
}

// ---------------------------------------------------------------------------

class PathFamily final : public GraphFamily {
 public:
  static std::int64_t coord(const VertexId& v) {
    auto x = parse_int<std::int64_t>(v.str());
    if (!x) bad_id("biinfinite_path", v);
    return *x;
  }
  std::vector<VertexId> neighbors(const VertexId& v) const override {
    auto x = coord(v);
    return {VertexId(std::to_string(x - 1)), VertexId(std::to_string(x + 1))};
  }
  void validate(const VertexId& v) const override { coord(v); }
  std::string name() const override { return "biinfinite_path"; }
  std::string spec_string() const override { return "family=biinfinite_path"; }
  std::optional<VertexId> default_root() const override { return VertexId("0"); }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const override {
    return std::llabs(coord(u) - coord(w));
  }
  bool has_metric() const override { return true; }
};

class GridFamily final : public GraphFamily {
 public:
  static std::pair<std::int64_t, std::int64_t> coord(const VertexId& v) {
    auto parts = split(v.str(), ',');
    if (parts.size() != 2) bad_id("grid2d", v);
    auto x = parse_int<std::int64_t>(parts[0]);
    auto y = parse_int<std::int64_t>(parts[1]);
    if (!x || !y) bad_id("grid2d", v);
    return {*x, *y};
  }
  static VertexId make(std::int64_t x, std::int64_t y) {
    return VertexId(std::to_string(x) + "," + std::to_string(y));
  }
  std::vector<VertexId> neighbors(const VertexId& v) const override {
    auto [x, y] = coord(v);
    return {make(x - 1, y), make(x + 1, y), make(x, y - 1), make(x, y + 1)};
  }
  void validate(const VertexId& v) const override { coord(v); }
  std::string name() const override { return "grid2d"; }
  std::string spec_string() const override { return "family=grid2d"; }
  std::optional<VertexId> default_root() const override { return VertexId("0,0"); }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const override {
    auto [a, b] = coord(u);
    auto [c, d] = coord(w);
    return std::llabs(a - c) + std::llabs(b - d);
  }
  bool has_metric() const override { return true; }
};

// Root "ε"; the root's children are 0..d-1, every other vertex has children
// 0..d-2, and a vertex is the dotted path of child indices from the root.
class TreeFamily final : public GraphFamily {
 public:
  explicit TreeFamily(int d) : d_(d) {}

  std::vector<int> path(const VertexId& v) const {
    if (v == kTreeRoot) return {};
    std::vector<int> out;
    for (auto part : split(v.str(), '.')) {
      auto k = parse_int<int>(part);
      const int limit = out.empty() ? d_ : d_ - 1;
      if (!k || *k < 0 || *k >= limit) bad_id(name(), v);
      out.push_back(*k);
    }
    return out;
  }
  static VertexId make(const std::vector<int>& p) {
    if (p.empty()) return kTreeRoot;
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(p[i]);
    }
    return VertexId(std::move(s));
  }
  std::vector<VertexId> neighbors(const VertexId& v) const override {
    auto p = path(v);
    std::vector<VertexId> out;
    const int children = p.empty() ? d_ : d_ - 1;
    if (!p.empty()) {
      auto parent = p;
      parent.pop_back();
      out.push_back(make(parent));
    }
    p.push_back(0);
    for (int k = 0; k < children; ++k) {
      p.back() = k;
      out.push_back(make(p));
    }
    return out;
  }
  void validate(const VertexId& v) const override { path(v); }
  std::string name() const override { return "regular_tree(" + std::to_string(d_) + ")"; }
  std::string spec_string() const override { return "family=regular_tree d=" + std::to_string(d_); }
  std::optional<VertexId> default_root() const override { return kTreeRoot; }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const override {
    auto a = path(u);
    auto b = path(w);
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
    return static_cast<std::int64_t>(a.size() + b.size() - 2 * common);
  }
  bool has_metric() const override { return true; }

 private:
  int d_;
};

class TwinLeafPathFamily final : public GraphFamily {
 public:
  std::vector<VertexId> neighbors(const VertexId& v) const override {
    if (v == kTwinLeafU || v == kTwinLeafW) return {VertexId("0")};
    auto x = PathFamily::coord(v);
    std::vector<VertexId> out{VertexId(std::to_string(x - 1)), VertexId(std::to_string(x + 1))};
    if (x == 0) {
      out.push_back(kTwinLeafU);
      out.push_back(kTwinLeafW);
    }
    return out;
  }
  void validate(const VertexId& v) const override {
    if (v == kTwinLeafU || v == kTwinLeafW) return;
    PathFamily::coord(v);
  }
  std::string name() const override { return "twin_leaf_path"; }
  std::string spec_string() const override { return "family=twin_leaf_path"; }
  std::optional<VertexId> default_root() const override { return VertexId("0"); }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const override {
    if (u == w) return 0;
    const bool tu = u == kTwinLeafU || u == kTwinLeafW;
    const bool tw = w == kTwinLeafU || w == kTwinLeafW;
    if (tu && tw) return 2;
    if (tu) return 1 + std::llabs(PathFamily::coord(w));
    if (tw) return 1 + std::llabs(PathFamily::coord(u));
    return std::llabs(PathFamily::coord(u) - PathFamily::coord(w));
  }
  bool has_metric() const override { return true; }
};

// Two towers of paths P_n / Q_n (Q_n stands for P'_n) joined at P_1 - Q_1,
// where every vertex of a level is adjacent to the last vertex of the level
// below, plus a twin gadget pair over each vertex of Q_n, n > 1.
class ExampleFamily final : public GraphFamily {
 public:
  struct Parsed {
    enum Kind { P, Q, G1, G2 } kind;
    int n;
    std::uint64_t k;
  };

  static Parsed parse(const VertexId& v) {
    auto parts = split(v.str(), ':');
    if (parts.size() != 3) bad_id("example_graph", v);
    Parsed p{};
    if (parts[0] == "P") p.kind = Parsed::P;
    else if (parts[0] == "Q") p.kind = Parsed::Q;
    else if (parts[0] == "g1") p.kind = Parsed::G1;
    else if (parts[0] == "g2") p.kind = Parsed::G2;
    else bad_id("example_graph", v);
    auto n = parse_int<int>(parts[1]);
    auto k = parse_int<std::uint64_t>(parts[2]);
    if (!n || !k || *n < 1) bad_id("example_graph", v);
    if ((p.kind == Parsed::G1 || p.kind == Parsed::G2) && *n < 2) bad_id("example_graph", v);
    std::uint64_t size = 0;
    try {
      size = example_path_size(*n);
    } catch (const ArgumentError&) {
      bad_id("example_graph", v);
    }
    if (*k >= size) bad_id("example_graph", v);
    p.n = *n;
    p.k = *k;
    return p;
  }

  std::vector<VertexId> neighbors(const VertexId& v) const override {
    const Parsed p = parse(v);
    std::vector<VertexId> out;
    if (p.kind == Parsed::G1 || p.kind == Parsed::G2) {
      out.push_back(example_q(p.n, p.k));
      out.push_back(example_q(p.n - 1, example_path_size(p.n - 1) - 1));
      return out;
    }
    const bool tower_p = p.kind == Parsed::P;
    auto same = [&](int n, std::uint64_t k) { return tower_p ? example_p(n, k) : example_q(n, k); };
    const std::uint64_t last = example_path_size(p.n) - 1;
    if (p.k > 0) out.push_back(same(p.n, p.k - 1));
    if (p.k < last) out.push_back(same(p.n, p.k + 1));
    if (p.n > 1) out.push_back(same(p.n - 1, example_path_size(p.n - 1) - 1));
    if (p.n == 1) out.push_back(tower_p ? example_q(1, 0) : example_p(1, 0));
    if (!tower_p && p.n > 1) {
      out.push_back(example_gadget(1, p.n, p.k));
      out.push_back(example_gadget(2, p.n, p.k));
    }
    if (p.k == last) {
      const std::uint64_t up = example_path_size(p.n + 1);
      for (std::uint64_t j = 0; j < up; ++j) {
        out.push_back(same(p.n + 1, j));
        if (!tower_p) {
          out.push_back(example_gadget(1, p.n + 1, j));
          out.push_back(example_gadget(2, p.n + 1, j));
        }
      }
    }
    return out;
  }
  void validate(const VertexId& v) const override { parse(v); }
  std::string name() const override { return "example_graph"; }
  std::string spec_string() const override { return "family=example_graph"; }
  std::optional<VertexId> default_root() const override { return example_root_v(); }
};

class ProductFamily final : public GraphFamily {
 public:
  ProductFamily(GraphHandle left, GraphHandle right, std::string spec)
      : left_(std::move(left)), right_(std::move(right)), spec_(std::move(spec)) {}

  std::pair<VertexId, VertexId> parts(const VertexId& v) const {
    auto bar = v.str().find('|');
    if (bar == std::string::npos) bad_id("cartesian_product", v);
    VertexId a(v.str().substr(0, bar)), b(v.str().substr(bar + 1));
    left_.validate(a);
    right_.validate(b);
    return {a, b};
  }
  static VertexId join(const VertexId& a, const VertexId& b) { return VertexId(a.str() + "|" + b.str()); }

  std::vector<VertexId> neighbors(const VertexId& v) const override {
    auto [a, b] = parts(v);
    std::vector<VertexId> out;
    for (const auto& x : left_.neighbors(a)) out.push_back(join(x, b));
    for (const auto& y : right_.neighbors(b)) out.push_back(join(a, y));
    return out;
  }
  void validate(const VertexId& v) const override { parts(v); }
  std::string name() const override {
    return "cartesian_product(" + left_.family_name() + ", " + right_.family_name() + ")";
  }
  std::string spec_string() const override { return spec_; }
  std::optional<VertexId> default_root() const override {
    auto a = left_.root();
    auto b = right_.root();
    if (!a || !b) return std::nullopt;
    return join(*a, *b);
  }
  std::optional<std::int64_t> metric(const VertexId& u, const VertexId& w) const override {
    if (!has_metric()) return std::nullopt;
    auto [a, b] = parts(u);
    auto [c, d] = parts(w);
    return *left_.metric(a, c) + *right_.metric(b, d);
  }
  bool has_metric() const override { return left_.has_metric() && right_.has_metric(); }

 private:
  GraphHandle left_, right_;
  std::string spec_;
};

class FiniteFamily final : public GraphFamily {
 public:
  FiniteFamily(int n, const std::vector<Edge>& edges, std::string spec)
      : adj_(n), spec_(std::move(spec)) {
    for (auto [a, b] : edges) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }
  int index(const VertexId& v) const {
    auto i = parse_int<int>(v.str());
    if (!i || *i < 0 || *i >= static_cast<int>(adj_.size())) bad_id("finite_adjacency", v);
    return *i;
  }
  std::vector<VertexId> neighbors(const VertexId& v) const override {
    std::vector<VertexId> out;
    for (int w : adj_[index(v)]) out.emplace_back(std::to_string(w));
    return out;
  }
  void validate(const VertexId& v) const override { index(v); }
  std::string name() const override { return "finite_adjacency"; }
  std::string spec_string() const override { return spec_; }
  std::optional<VertexId> default_root() const override {
    if (adj_.empty()) return std::nullopt;
    return VertexId("0");
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::string spec_;
};

void emit_spec(const FamilySpec& s, const std::string& prefix, std::vector<std::string>& out) {
  const std::string key = prefix.empty() ? "family" : prefix;
  const std::string sub = prefix.empty() ? "" : prefix + ".";
  out.push_back(key + "=" + std::string(to_string(s.tag)));
  switch (s.tag) {
    case FamilyTag::regular_tree:
      out.push_back(sub + "d=" + std::to_string(s.degree));
      break;
    case FamilyTag::cartesian_product:
      emit_spec(*s.left, sub + "left", out);
      emit_spec(*s.right, sub + "right", out);
      break;
    case FamilyTag::finite_adjacency: {
      out.push_back(sub + "n=" + std::to_string(s.vertex_count));
      std::string e;
      for (auto [a, b] : s.edges) {
        if (!e.empty()) e += ',';
        e += std::to_string(a) + "-" + std::to_string(b);
      }
      out.push_back(sub + "edges=" + e);
      break;
    }
    default:
      break;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::regular_tree: return "regular_tree";
    case FamilyTag::biinfinite_path: return "biinfinite_path";
    case FamilyTag::grid2d: return "grid2d";
    case FamilyTag::cartesian_product: return "cartesian_product";
    case FamilyTag::example_graph: return "example_graph";
    case FamilyTag::twin_leaf_path: return "twin_leaf_path";
    case FamilyTag::finite_adjacency: return "finite_adjacency";
  }
  return "?";
}

FamilyTag family_tag_from_string(std::string_view name) {
  for (auto tag : {FamilyTag::regular_tree, FamilyTag::biinfinite_path, FamilyTag::grid2d,
                   FamilyTag::cartesian_product, FamilyTag::example_graph, FamilyTag::twin_leaf_path,
                   FamilyTag::finite_adjacency}) {
    if (to_string(tag) == name) return tag;
  }
  throw ArgumentError("unknown graph family '" + std::string(name) + "'");
}

void FamilySpec::validate() const {
  switch (tag) {
    case FamilyTag::regular_tree:
      if (degree < 3) throw ArgumentError("regular_tree needs degree d >= 3, got " + std::to_string(degree));
      break;
    case FamilyTag::cartesian_product:
      if (!left || !right) throw ArgumentError("cartesian_product needs left and right factors");
      left->validate();
      right->validate();
      if (left->tag == FamilyTag::cartesian_product)
        throw ArgumentError("cartesian_product: nest products on the right factor only");
      if (!left->infinite_diameter() || !right->infinite_diameter())
        throw ArgumentError("cartesian_product factors must be connected with infinite diameter");
      break;
    case FamilyTag::finite_adjacency:
      if (vertex_count < 1) throw ArgumentError("finite_adjacency needs n >= 1");
      for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
          throw ArgumentError("finite_adjacency edge out of range");
        if (a == b) throw ArgumentError("finite_adjacency self-loop at " + std::to_string(a));
      }
      break;
    default:
      break;
  }
}

bool FamilySpec::infinite_diameter() const { return tag != FamilyTag::finite_adjacency; }

std::string FamilySpec::to_string() const {
  std::vector<std::string> parts;
  emit_spec(*this, "", parts);
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += ' ';
    s += p;
  }
  return s;
}

FamilySpec family_spec_from_map(const std::map<std::string, std::string>& kv, const std::string& prefix) {
  const std::string key = prefix.empty() ? "family" : prefix;
  const std::string sub = prefix.empty() ? "" : prefix + ".";
  auto it = kv.find(key);
  if (it == kv.end()) throw ArgumentError("missing '" + key + "' in family spec");
  FamilySpec s;
  s.tag = family_tag_from_string(it->second);
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    auto f = kv.find(sub + k);
    if (f == kv.end()) return std::nullopt;
    return f->second;
  };
  auto get_int = [&](const std::string& k) -> std::optional<int> {
    auto v = get(k);
    if (!v) return std::nullopt;
    auto x = parse_int<int>(*v);
    if (!x) throw ArgumentError("parameter " + sub + k + " must be an integer, got '" + *v + "'");
    return x;
  };
  switch (s.tag) {
    case FamilyTag::regular_tree:
      s.degree = get_int("d").value_or(3);
      break;
    case FamilyTag::cartesian_product:
      s.left = std::make_shared<FamilySpec>(family_spec_from_map(kv, sub + "left"));
      s.right = std::make_shared<FamilySpec>(family_spec_from_map(kv, sub + "right"));
      break;
    case FamilyTag::finite_adjacency: {
      auto n = get_int("n");
      if (!n) throw ArgumentError("finite_adjacency needs n");
      s.vertex_count = *n;
      if (auto e = get("edges"); e && !e->empty()) {
        for (auto tok : split(*e, ',')) {
          auto ends = split(tok, '-');
          auto a = ends.size() == 2 ? parse_int<int>(ends[0]) : std::nullopt;
          auto b = ends.size() == 2 ? parse_int<int>(ends[1]) : std::nullopt;
          if (!a || !b) throw ArgumentError("malformed edge '" + std::string(tok) + "'");
          s.edges.emplace_back(std::min(*a, *b), std::max(*a, *b));
        }
        std::sort(s.edges.begin(), s.edges.end());
        s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
      }
      break;
    }
    default:
      break;
  }
  s.validate();
  return s;
}

FamilySpec parse_family_spec(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ArgumentError("expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return family_spec_from_map(kv);
}

GraphHandle make_generator(const FamilySpec& spec) {
  spec.validate();
  switch (spec.tag) {
    case FamilyTag::regular_tree: return GraphHandle(std::make_shared<TreeFamily>(spec.degree));
    case FamilyTag::biinfinite_path: return GraphHandle(std::make_shared<PathFamily>());
    case FamilyTag::grid2d: return GraphHandle(std::make_shared<GridFamily>());
    case FamilyTag::twin_leaf_path: return GraphHandle(std::make_shared<TwinLeafPathFamily>());
    case FamilyTag::example_graph: return GraphHandle(std::make_shared<ExampleFamily>());
    case FamilyTag::cartesian_product:
      return GraphHandle(std::make_shared<ProductFamily>(make_generator(*spec.left), make_generator(*spec.right),
                                                         spec.to_string()));
    case FamilyTag::finite_adjacency:
      return GraphHandle(std::make_shared<FiniteFamily>(spec.vertex_count, spec.edges, spec.to_string()));
  }
  throw ArgumentError("unhandled family");
}

GraphHandle make_generator(std::string_view spec_text) { return make_generator(parse_family_spec(spec_text)); }

GraphHandle biinfinite_path() { return make_generator(FamilySpec{.tag = FamilyTag::biinfinite_path}); }
GraphHandle grid2d() { return make_generator(FamilySpec{.tag = FamilyTag::grid2d}); }
GraphHandle regular_tree(int degree) {
  return make_generator(FamilySpec{.tag = FamilyTag::regular_tree, .degree = degree});
}
GraphHandle twin_leaf_path() { return make_generator(FamilySpec{.tag = FamilyTag::twin_leaf_path}); }
GraphHandle example_graph() { return make_generator(FamilySpec{.tag = FamilyTag::example_graph}); }
GraphHandle cartesian_product(const FamilySpec& left, const FamilySpec& right) {
  FamilySpec s{.tag = FamilyTag::cartesian_product};
  s.left = std::make_shared<FamilySpec>(left);
  s.right = std::make_shared<FamilySpec>(right);
  return make_generator(s);
}
GraphHandle finite_adjacency(int vertex_count, std::vector<Edge> edges) {
  FamilySpec s{.tag = FamilyTag::finite_adjacency, .vertex_count = vertex_count};
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  s.edges = std::move(edges);
  return make_generator(s);
}

// ---------------------------------------------------------------------------
// Example graph sizes

namespace {

// Index n holds |P_n|; filled once, read-only afterwards.
const std::vector<std::uint64_t>& path_size_table() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t{0, 1};
    std::uint64_t prefix = 1;  // sum_{i<n} |P_i|
    for (int n = 2;; ++n) {
      std::uint64_t next = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(n), prefix, &next)) break;
      std::uint64_t sum = 0;
      if (__builtin_add_overflow(prefix, next, &sum)) break;
      // keep 4*prefix + 3*|P_n| representable too
      std::uint64_t a = 0, b = 0, c = 0;
      if (__builtin_mul_overflow(prefix, 4u, &a) || __builtin_mul_overflow(next, 3u, &b) ||
          __builtin_add_overflow(a, b, &c))
        break;
      t.push_back(next);
      prefix = sum;
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t example_path_size(int n) {
  const auto& t = path_size_table();
  if (n < 1) throw ArgumentError("path index must be >= 1, got " + std::to_string(n));
  if (n >= static_cast<int>(t.size())) throw ArgumentError("|P_" + std::to_string(n) + "| overflows 64 bits");
  return t[n];
}

std::pair<std::uint64_t, std::uint64_t> example_graph_sizes(int n) {
  const std::uint64_t pn = example_path_size(n);
  std::uint64_t prefix = 0;
  for (int i = 1; i < n; ++i) prefix += example_path_size(i);
  return {pn, 4 * prefix + 3 * pn};
}

VertexId example_p(int n, std::uint64_t k) { return VertexId("P:" + std::to_string(n) + ":" + std::to_string(k)); }
VertexId example_q(int n, std::uint64_t k) { return VertexId("Q:" + std::to_string(n) + ":" + std::to_string(k)); }
VertexId example_gadget(int which, int n, std::uint64_t k) {
  return VertexId("g" + std::to_string(which) + ":" + std::to_string(n) + ":" + std::to_string(k));
}

}  // namespace symbreak
