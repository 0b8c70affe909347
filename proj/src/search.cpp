// Individualization-refinement search for automorphisms and isomorphisms of
// small simple graphs.
//
// Two ordered partitions are refined in lockstep, one per side of the
// candidate map. Cells are identified by their start position, so a cell in
// the left partition corresponds to the cell at the same position on the
// right; any difference in how they split proves the branch empty. A
// discrete pair of partitions is read off as the map left.order[i] ->
// right.order[i].

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "symbreak/automorphisms.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

void SearchConstraints::validate(int n) const {
  auto check = [n](int v, const char* what) {
    if (v < 0 || v >= n) throw ArgumentError(std::string(what) + " index " + std::to_string(v) + " out of range");
  };
  for (int v : fixed_points) check(v, "fixed point");
  for (const auto& s : preserved_sets)
    for (int v : s) check(v, "preserved-set");
  if (center) check(*center, "center");
}

namespace {

struct Partition {
  std::vector<int> order;     // position -> vertex
  std::vector<int> pos;       // vertex -> position
  std::vector<int> cell_of;   // vertex -> start of its cell
  std::vector<int> cell_end;  // cell start -> one past its last position
  int cells = 0;

  int size() const { return static_cast<int>(order.size()); }
  bool discrete() const { return cells == size(); }
  int cell_size(int start) const { return cell_end[start] - start; }
};

using Key = std::vector<std::int64_t>;

std::vector<Key> vertex_keys(const FiniteGraph& f, const SearchConstraints& c) {
  const int n = f.size();
  std::vector<Key> keys(n);
  for (const auto& set : c.preserved_sets) {
    std::vector<char> in(n, 0);
    for (int v : set) in[v] = 1;
    for (int v = 0; v < n; ++v) keys[v].push_back(in[v]);
  }
  std::vector<std::int64_t> fixed_rank(n, 0);
  for (std::size_t i = 0; i < c.fixed_points.size(); ++i) fixed_rank[c.fixed_points[i]] = static_cast<std::int64_t>(i) + 1;
  if (c.center) fixed_rank[*c.center] = -1;
  std::vector<std::int64_t> dist(n, -1);
  if (c.center) {
    std::deque<int> q{*c.center};
    dist[*c.center] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : f.adjacent(x))
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
  }
  for (int v = 0; v < n; ++v) {
    keys[v].push_back(fixed_rank[v]);
    keys[v].push_back(dist[v]);
    keys[v].push_back(f.degree(v));
  }
  return keys;
}

// Cells in ascending key order; `sorted_keys` receives the key of each
// position so two sides can be compared.
Partition make_partition(const std::vector<Key>& keys, std::vector<Key>* sorted_keys = nullptr) {
  const int n = static_cast<int>(keys.size());
  Partition p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  std::stable_sort(p.order.begin(), p.order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  p.pos.resize(n);
  p.cell_of.resize(n);
  p.cell_end.assign(n, 0);
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && keys[p.order[j]] == keys[p.order[i]]) ++j;
    p.cell_end[i] = j;
    for (int k = i; k < j; ++k) {
      p.pos[p.order[k]] = k;
      p.cell_of[p.order[k]] = i;
    }
    ++p.cells;
    i = j;
  }
  if (sorted_keys) {
    sorted_keys->clear();
    for (int v : p.order) sorted_keys->push_back(keys[v]);
  }
  return p;
}

class Refiner {
 public:
  explicit Refiner(int n) : cnt_{std::vector<int>(n, 0), std::vector<int>(n, 0)}, in_queue_(n, 0) {}

  void enqueue(int start) {
    if (!in_queue_[start]) {
      in_queue_[start] = 1;
      queue_.push_back(start);
    }
  }

  void enqueue_all(const Partition& p) {
    for (int i = 0; i < p.size(); i = p.cell_end[i]) enqueue(i);
  }

  // Splits v off the back of its cell; returns the singleton's position.
  static int individualize(Partition& p, int v) {
    const int c = p.cell_of[v];
    const int e = p.cell_end[c];
    if (e - c == 1) return c;
    const int last = e - 1;
    const int pv = p.pos[v];
    const int w = p.order[last];
    p.order[pv] = w;
    p.pos[w] = pv;
    p.order[last] = v;
    p.pos[v] = last;
    p.cell_end[c] = last;
    p.cell_end[last] = e;
    p.cell_of[v] = last;
    ++p.cells;
    return last;
  }

  // Refines `left` (and `right`, when given, in lockstep) to the coarsest
  // equitable partition below the current one. Returns false as soon as the
  // two sides split differently; the partitions are unusable afterwards.
  bool refine(const FiniteGraph& a, Partition& left, const FiniteGraph* b, Partition* right) {
    bool ok = true;
    std::size_t head = 0;
    while (ok && head < queue_.size()) {
      const int s = queue_[head++];
      in_queue_[s] = 0;
      count(a, left, s, 0);
      if (right) count(*b, *right, s, 1);

      sort_touched(left, 0);
      if (right) {
        sort_touched(*right, 1);
        ok = same_profile(left, *right);
      }
      if (ok) {
        const auto& tl = touched_[0];
        for (std::size_t i = 0; i < tl.size();) {
          const int c = left.cell_of[tl[i]];
          std::size_t j = i;
          while (j < tl.size() && left.cell_of[tl[j]] == c) ++j;
          groups_.clear();
          split(left, c, i, j, 0, &groups_);
          if (right) split(*right, c, i, j, 1, nullptr);
          schedule(c);
          i = j;
        }
      }
      reset_counts();
    }
    for (std::size_t k = head; k < queue_.size(); ++k) in_queue_[queue_[k]] = 0;
    queue_.clear();
    return ok;
  }

 private:
  void count(const FiniteGraph& g, const Partition& p, int s, int side) {
    auto& cnt = cnt_[side];
    auto& touched = touched_[side];
    for (int q = s; q < p.cell_end[s]; ++q) {
      for (int y : g.adjacent(p.order[q])) {
        if (cnt[y]++ == 0) touched.push_back(y);
      }
    }
  }

  void sort_touched(const Partition& p, int side) {
    const auto& cnt = cnt_[side];
    std::sort(touched_[side].begin(), touched_[side].end(), [&](int x, int y) {
      if (p.cell_of[x] != p.cell_of[y]) return p.cell_of[x] < p.cell_of[y];
      return cnt[x] < cnt[y];
    });
  }

  bool same_profile(const Partition& l, const Partition& r) const {
    const auto& tl = touched_[0];
    const auto& tr = touched_[1];
    if (tl.size() != tr.size()) return false;
    for (std::size_t i = 0; i < tl.size(); ++i) {
      if (l.cell_of[tl[i]] != r.cell_of[tr[i]] || cnt_[0][tl[i]] != cnt_[1][tr[i]]) return false;
    }
    return true;
  }

  // Touched vertices [i, j) of cell c move to the tail of the cell in
  // ascending count order; untouched vertices stay in front with count 0.
  void split(Partition& p, int c, std::size_t i, std::size_t j, int side, std::vector<std::pair<int, int>>* groups) {
    const auto& t = touched_[side];
    const auto& cnt = cnt_[side];
    const int e = p.cell_end[c];
    const int nt = static_cast<int>(j - i);
    if (nt == e - c && cnt[t[i]] == cnt[t[j - 1]]) return;

    int tail = e;
    for (std::size_t k = i; k < j; ++k) {
      const int y = t[k];
      --tail;
      const int py = p.pos[y];
      const int z = p.order[tail];
      p.order[py] = z;
      p.pos[z] = py;
      p.order[tail] = y;
      p.pos[y] = tail;
    }
    for (std::size_t k = i; k < j; ++k) {
      const int at = e - nt + static_cast<int>(k - i);
      p.order[at] = t[k];
      p.pos[t[k]] = at;
    }

    auto close_group = [&](int start, int end) {
      p.cell_end[start] = end;
      if (start != c)
        for (int q = start; q < end; ++q) p.cell_of[p.order[q]] = start;
      if (groups) groups->emplace_back(start, end - start);
    };
    int start = c;
    if (nt < e - c) {
      close_group(c, e - nt);
      start = e - nt;
    }
    for (int q = start; q < e;) {
      int r = q;
      while (r < e && cnt[p.order[r]] == cnt[p.order[q]]) ++r;
      close_group(q, r);
      q = r;
    }
  }

  // Hopcroft's rule: a cell already waiting keeps all its pieces queued;
  // otherwise every piece but one largest is enough.
  void schedule(int c) {
    if (groups_.size() <= 1) return;
    left_cells_delta_ += static_cast<int>(groups_.size()) - 1;
    if (in_queue_[c]) {
      for (auto [s, len] : groups_) enqueue(s);
      return;
    }
    std::size_t largest = 0;
    for (std::size_t k = 1; k < groups_.size(); ++k)
      if (groups_[k].second > groups_[largest].second) largest = k;
    for (std::size_t k = 0; k < groups_.size(); ++k)
      if (k != largest) enqueue(groups_[k].first);
  }

  void reset_counts() {
    for (int side = 0; side < 2; ++side) {
      for (int y : touched_[side]) cnt_[side][y] = 0;
      touched_[side].clear();
    }
  }

 public:
  // Cells created since the last call; split() does not know which side it
  // is bookkeeping for, so callers add this to both partitions.
  int take_new_cells() {
    int d = left_cells_delta_;
    left_cells_delta_ = 0;
    return d;
  }

 private:
  std::vector<int> cnt_[2];
  std::vector<int> touched_[2];
  std::vector<char> in_queue_;
  std::vector<int> queue_;
  std::vector<std::pair<int, int>> groups_;
  int left_cells_delta_ = 0;
};

struct Target {
  int cell = -1;
  int vertex = -1;
};

int first_open_cell(const Partition& p) {
  for (int i = 0; i < p.size(); i = p.cell_end[i])
    if (p.cell_end[i] - i > 1) return i;
  return -1;
}

bool satisfies(const Permutation& p, const SearchConstraints& c) {
  for (int v : c.fixed_points)
    if (p(v) != v) return false;
  if (c.center && p(*c.center) != *c.center) return false;
  for (const auto& set : c.preserved_sets) {
    std::vector<int> img;
    img.reserve(set.size());
    for (int v : set) img.push_back(p(v));
    std::sort(img.begin(), img.end());
    std::vector<int> orig(set.begin(), set.end());
    std::sort(orig.begin(), orig.end());
    if (img != orig) return false;
  }
  return true;
}

bool maps_edges(const FiniteGraph& a, const FiniteGraph& b, const std::vector<int>& img) {
  if (a.edges().size() != b.edges().size()) return false;
  for (auto [u, w] : a.edges())
    if (!b.has_edge(img[u], img[w])) return false;
  return true;
}

class Search {
 public:
  using Chooser = std::function<Target(const Partition&)>;
  using Leaf = std::function<bool(const Partition&, const Partition&)>;

  Search(const FiniteGraph& a, const FiniteGraph& b, std::size_t node_cap)
      : a_(a), b_(b), node_cap_(node_cap), refiner_(a.size()) {}

  // Refines both sides from scratch; false if they are incompatible.
  bool prepare(Partition& l, Partition& r) {
    refiner_.enqueue_all(l);
    bool ok = refiner_.refine(a_, l, &b_, &r);
    int d = refiner_.take_new_cells();
    l.cells += d;
    r.cells += d;
    return ok;
  }

  void refine_single(Partition& p) {
    refiner_.enqueue_all(p);
    refiner_.refine(a_, p, nullptr, nullptr);
    p.cells += refiner_.take_new_cells();
  }

  void fix_single(Partition& p, int v) {
    refiner_.enqueue(Refiner::individualize(p, v));
    refiner_.refine(a_, p, nullptr, nullptr);
    p.cells += refiner_.take_new_cells();
  }

  // Individualizes x on the left and y on the right, then refines.
  bool branch(Partition& l, Partition& r, int x, int y) {
    const int sl = Refiner::individualize(l, x);
    const int sr = Refiner::individualize(r, y);
    if (sl != sr) return false;
    refiner_.enqueue(sl);
    bool ok = refiner_.refine(a_, l, &b_, &r);
    int d = refiner_.take_new_cells();
    l.cells += d;
    r.cells += d;
    return ok;
  }

  // Returns false once the leaf callback asks to stop or the cap is hit.
  bool dfs(const Partition& l, const Partition& r, const Chooser& choose, const Leaf& leaf) {
    if (++nodes_ > node_cap_) {
      capped_ = true;
      return false;
    }
    const Target t = choose(l);
    if (t.cell < 0) return leaf(l, r);
    // Trying the vertex itself first makes the identity the first leaf of
    // an automorphism search.
    const bool self = r.pos[t.vertex] >= t.cell && r.pos[t.vertex] < r.cell_end[t.cell];
    if (self) {
      Partition l2 = l, r2 = r;
      if (branch(l2, r2, t.vertex, t.vertex) && !dfs(l2, r2, choose, leaf)) return false;
    }
    for (int q = t.cell; q < r.cell_end[t.cell]; ++q) {
      const int z = r.order[q];
      if (self && z == t.vertex) continue;
      Partition l2 = l, r2 = r;
      if (branch(l2, r2, t.vertex, z) && !dfs(l2, r2, choose, leaf)) return false;
    }
    return true;
  }

  std::size_t nodes() const { return nodes_; }
  bool capped() const { return capped_; }

  static std::vector<int> read_map(const Partition& l, const Partition& r) {
    std::vector<int> img(l.size());
    for (int i = 0; i < l.size(); ++i) img[l.order[i]] = r.order[i];
    return img;
  }

  // First completion of (l, r) to an isomorphism, if any.
  std::optional<std::vector<int>> complete(const Partition& l, const Partition& r) {
    std::optional<std::vector<int>> found;
    dfs(
        l, r,
        [](const Partition& p) {
          const int c = first_open_cell(p);
          return c < 0 ? Target{} : Target{c, p.order[c]};
        },
        [&](const Partition& pl, const Partition& pr) {
          auto img = read_map(pl, pr);
          if (!maps_edges(a_, b_, img)) return true;
          found = std::move(img);
          return false;
        });
    return found;
  }

 private:
  const FiniteGraph& a_;
  const FiniteGraph& b_;
  std::size_t node_cap_;
  Refiner refiner_;
  std::size_t nodes_ = 0;
  bool capped_ = false;
};

Target first_open_target(const Partition& p) {
  const int c = first_open_cell(p);
  return c < 0 ? Target{} : Target{c, p.order[c]};
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Permutation> certify_automorphism(const FiniteGraph& f, const Permutation& p, const SearchConstraints& c) {
  if (p.size() != f.size()) return std::nullopt;
  if (!maps_edges(f, f, p.images())) return std::nullopt;
  if (!satisfies(p, c)) return std::nullopt;
  return Permutation(p.images(), true);
}

SearchResult search_automorphisms(const FiniteGraph& f, const SearchConstraints& c, std::size_t limit,
                                  std::size_t node_cap) {
  c.validate(f.size());
  SearchResult out;
  if (limit == 0) return out;
  Search search(f, f, node_cap);
  Partition l = make_partition(vertex_keys(f, c));
  Partition r = l;
  search.prepare(l, r);
  bool stopped_by_limit = false;
  search.dfs(l, r, first_open_target, [&](const Partition& pl, const Partition& pr) {
    auto img = Search::read_map(pl, pr);
    auto cert = certify_automorphism(f, Permutation(std::move(img)), c);
    if (!cert) return true;
    out.automorphisms.push_back(std::move(*cert));
    if (out.automorphisms.size() >= limit) {
      stopped_by_limit = true;
      return false;
    }
    return true;
  });
  out.nodes = search.nodes();
  out.hit_node_cap = search.capped();
  out.exhaustive = !stopped_by_limit && !search.capped();
  // A limit reached exactly on the last leaf still leaves the list complete,
  // but we cannot tell without searching on; report it as partial.
  return out;
}

std::optional<Permutation> find_automorphism(const FiniteGraph& f, const SearchConstraints& c, int from, int to,
                                             std::size_t node_cap) {
  c.validate(f.size());
  if (from < 0 || to < 0 || from >= f.size() || to >= f.size()) throw ArgumentError("vertex index out of range");
  Search search(f, f, node_cap);
  Partition l = make_partition(vertex_keys(f, c));
  Partition r = l;
  search.prepare(l, r);
  if (l.cell_of[from] != r.cell_of[to]) return std::nullopt;
  if (!search.branch(l, r, from, to)) return std::nullopt;
  auto img = search.complete(l, r);
  if (search.capped()) throw SearchCapExceeded("automorphism search node cap exceeded", search.nodes());
  if (!img) return std::nullopt;
  return certify_automorphism(f, Permutation(std::move(*img)), c);
}

std::optional<Permutation> find_isomorphism(const FiniteGraph& a, const FiniteGraph& b, std::size_t node_cap) {
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return std::nullopt;
  std::vector<Key> ka, kb;
  Partition l = make_partition(vertex_keys(a, {}), &ka);
  Partition r = make_partition(vertex_keys(b, {}), &kb);
  if (ka != kb) return std::nullopt;
  Search search(a, b, node_cap);
  if (!search.prepare(l, r)) return std::nullopt;
  auto img = search.complete(l, r);
  if (search.capped()) throw SearchCapExceeded("isomorphism search node cap exceeded", search.nodes());
  if (!img) return std::nullopt;
  return Permutation(std::move(*img), true);
}

RestrictionResult enumerate_restrictions(const FiniteGraph& f, const SearchConstraints& c, std::span<const int> domain,
                                         std::size_t limit, std::size_t node_cap) {
  SearchConstraints cc = c;
  cc.preserved_sets.emplace_back(domain.begin(), domain.end());
  cc.validate(f.size());

  std::vector<int> domain_pos(f.size(), -1);
  for (std::size_t k = 0; k < domain.size(); ++k) domain_pos[domain[k]] = static_cast<int>(k);

  RestrictionResult out;
  Search search(f, f, node_cap);
  Partition l = make_partition(vertex_keys(f, cc));
  Partition r = l;
  search.prepare(l, r);

  auto choose_domain = [&](const Partition& p) -> Target {
    for (int d : domain) {
      const int cell = p.cell_of[d];
      if (p.cell_size(cell) > 1) return {cell, d};
    }
    return {};
  };
  bool stopped = false;
  search.dfs(l, r, choose_domain, [&](const Partition& pl, const Partition& pr) {
    auto ext = search.complete(pl, pr);
    if (!ext) return !search.capped();
    if (!certify_automorphism(f, Permutation(*ext), cc)) return true;
    std::vector<int> img(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) img[k] = domain_pos[(*ext)[domain[k]]];
    out.restrictions.emplace_back(std::move(img), true);
    if (out.restrictions.size() >= limit) {
      stopped = true;
      return false;
    }
    return true;
  });
  out.nodes = search.nodes();
  if (search.capped()) throw SearchCapExceeded("restriction search node cap exceeded", out.restrictions.size());
  out.exhaustive = !stopped;
  return out;
}

FixingReport check_targets_fixed(const FiniteGraph& f, const SearchConstraints& c, std::span<const int> targets,
                                 std::size_t max_offenders, std::size_t node_cap) {
  c.validate(f.size());
  FixingReport report;
  Search search(f, f, node_cap);
  Partition base = make_partition(vertex_keys(f, c));
  search.refine_single(base);

  for (int y : targets) {
    if (report.offenders.size() >= max_offenders && max_offenders > 0) break;
    const int cell = base.cell_of[y];
    if (base.cell_size(cell) == 1) continue;
    if (std::any_of(report.offenders.begin(), report.offenders.end(), [y](const Permutation& p) { return !p.fixes(y); }))
      continue;
    bool moved = false;
    for (int q = cell; q < base.cell_end[cell] && !moved; ++q) {
      const int z = base.order[q];
      if (z == y) continue;
      Partition l = base, r = base;
      if (!search.branch(l, r, y, z)) continue;
      auto img = search.complete(l, r);
      if (search.capped()) throw SearchCapExceeded("distinguishing check node cap exceeded", report.offenders.size());
      if (!img) continue;
      auto cert = certify_automorphism(f, Permutation(std::move(*img)), c);
      if (!cert) continue;
      report.offenders.push_back(std::move(*cert));
      report.all_fixed = false;
      moved = true;
    }
    // Every automorphism fixes y, so y may be individualized for the rest.
    if (!moved) search.fix_single(base, y);
  }
  report.nodes = search.nodes();
  return report;
}

}  // namespace symbreak
