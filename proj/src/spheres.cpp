#include "symbreak/spheres.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "symbreak/errors.hpp"

namespace symbreak {

// ---------------------------------------------------------------------------
// Rational

Rational Rational::parse(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw ArgumentError("not a number: '" + std::string(text) + "'");
    return v;
  };
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = to_int(text.substr(0, slash));
    r.den = to_int(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw ArgumentError("too many decimals: '" + std::string(text) + "'");
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (text.substr(0, dot).empty() || text.substr(0, dot) == "-") digits.insert(digits.size() - frac.size(), "0");
    r.num = to_int(digits);
    r.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
  } else {
    r.num = to_int(text);
  }
  if (r.den == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
  if (r.den < 0) {
    r.den = -r.den;
    r.num = -r.num;
  }
  const std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------

namespace {

// Breadth-first layers around one source, produced on demand.
class Layers {
 public:
  Layers(const GraphHandle& g, const VertexId& src, std::size_t budget) : g_(g), budget_(budget) {
    seen_.insert(src);
    current_ = {src};
  }

  // Advances to the next sphere and returns it (unsorted).
  const std::vector<VertexId>& next() {
    std::vector<VertexId> out;
    for (const auto& x : current_)
      for (auto& y : g_.neighbors(x))
        if (seen_.insert(y).second) {
          if (seen_.size() > budget_) throw BudgetExceeded(budget_, "layered BFS");
          out.push_back(std::move(y));
        }
    current_ = std::move(out);
    return current_;
  }

 private:
  const GraphHandle& g_;
  std::size_t budget_;
  std::unordered_set<VertexId> seen_;
  std::vector<VertexId> current_;
};

}  // namespace

bool are_twins(const GraphHandle& g, const VertexId& u, const VertexId& w) {
  auto strip = [&](std::vector<VertexId> s) {
    std::erase_if(s, [&](const VertexId& x) { return x == u || x == w; });
    std::sort(s.begin(), s.end());
    return s;
  };
  return strip(g.neighbors(u)) == strip(g.neighbors(w));
}

std::vector<DscWitness> dsc_set(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                std::size_t budget) {
  if (u == w) throw ArgumentError("dsc_set needs distinct vertices");
  if (R < 1) throw ArgumentError("dsc_set needs R >= 1");
  const BallView bu = ball(g, u, R, budget);
  const BallView bw = ball(g, w, R, budget);
  std::map<VertexId, std::vector<int>> out;
  auto scan = [&](const BallView& mine, const BallView& other) {
    for (int i = 0; i < static_cast<int>(mine.size()); ++i) {
      const int n = mine.distance(i);
      if (n == 0) continue;
      auto d = other.distance_of(mine.vertex(i));
      if (!d || *d != n) out[mine.vertex(i)].push_back(n);
    }
  };
  scan(bu, bw);
  scan(bw, bu);
  std::vector<DscWitness> result;
  for (auto& [x, depths] : out) {
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    result.push_back({x, std::move(depths)});
  }
  return result;
}

std::vector<std::pair<VertexId, VertexId>> equidistant_pairs(const BallView& b, int r_pairs) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (int d = 1; d <= std::min(r_pairs, b.radius()); ++d) {
    auto s = b.sphere(d);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) out.emplace_back(s[i], s[j]);
  }
  return out;
}

std::optional<int> first_witness_depth(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                       std::size_t budget) {
  if (u == w) throw ArgumentError("first_witness_depth needs distinct vertices");
  if (are_twins(g, u, w)) return std::nullopt;
  Layers lu(g, u, budget), lw(g, w, budget);
  for (int n = 1; n <= R; ++n) {
    auto su = lu.next();
    auto sw = lw.next();
    if (su.empty() && sw.empty()) return std::nullopt;  // both balls exhausted
    auto strip = [&](std::vector<VertexId>& s) {
      std::erase_if(s, [&](const VertexId& x) { return x == u || x == w; });
      std::sort(s.begin(), s.end());
    };
    strip(su);
    strip(sw);
    if (su != sw) return n;
  }
  return std::nullopt;
}

std::size_t DscReport::failures() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.failed(); }));
}

DscReport check_dsc(const GraphHandle& g, const VertexId& v, int r_pairs, int R, std::size_t budget) {
  if (r_pairs < 1) throw ArgumentError("r_pairs must be at least 1");
  if (R < r_pairs) throw ArgumentError("witness radius R must be at least r_pairs");
  DscReport rep;
  rep.root = v;
  rep.r_pairs = r_pairs;
  rep.R = R;
  const BallView around = ball(g, v, R, budget);
  rep.eccentricity_lower_bound = around.eccentricity();

  std::unordered_map<VertexId, BallView> cache;
  auto ball_of = [&](const VertexId& x) -> const BallView& {
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, ball(g, x, R, budget)).first;
    return it->second;
  };

  for (auto& [u, w] : equidistant_pairs(around, r_pairs)) {
    PairOutcome out;
    out.depth = *around.distance_of(u);
    const BallView& bu = ball_of(u);
    const BallView& bw = ball_of(w);
    std::vector<char> hit(R + 1, 0);
    auto scan = [&](const BallView& mine, const BallView& other) {
      for (int i = 0; i < static_cast<int>(mine.size()); ++i) {
        const VertexId& x = mine.vertex(i);
        if (x == u || x == w) continue;
        auto d = other.distance_of(x);
        if (!d || *d != mine.distance(i)) hit[mine.distance(i)] = 1;
      }
    };
    scan(bu, bw);
    scan(bw, bu);
    for (int n = 1; n <= R; ++n)
      if (hit[n]) {
        ++out.witness_depths;
        if (!out.first_depth) out.first_depth = n;
      }
    out.u = std::move(u);
    out.w = std::move(w);
    rep.pairs.push_back(std::move(out));
  }
  return rep;
}

std::optional<int> ball_equivalent(const GraphHandle& g, const VertexId& u, const VertexId& w, int R,
                                   std::size_t budget) {
  if (R < 0) throw ArgumentError("R must be nonnegative");
  if (u == w) return 0;
  // mask bit 1: in B_u(n); bit 2: in B_w(n). `odd` counts vertices in
  // exactly one ball.
  std::unordered_map<VertexId, int> mask{{u, 1}};
  std::size_t odd = 1;
  auto add = [&](const VertexId& x, int bit) {
    int& m = mask[x];
    if (m & bit) return;
    m |= bit;
    if (m == 3)
      --odd;
    else
      ++odd;
  };
  add(w, 2);
  Layers lu(g, u, budget), lw(g, w, budget);
  for (int n = 1; n <= R; ++n) {
    for (const auto& x : lu.next()) add(x, 1);
    for (const auto& x : lw.next()) add(x, 2);
    if (odd == 0) return n;
  }
  return std::nullopt;
}

GrowthProfile growth_profile(const GraphHandle& g, const VertexId& v, int R, std::size_t budget) {
  if (R < 1) throw ArgumentError("growth profile needs R >= 1");
  const BallView b = ball(g, v, R, budget);
  GrowthProfile p;
  p.root = v;
  p.R = R;
  for (int n = 0; n <= R; ++n) {
    p.sphere.push_back(b.sphere_size(n));
    p.ball.push_back(b.ball_size(n));
  }
  for (int n = 0; n < R; ++n) {
    if (p.ratio(n) > p.ratio_bound) {
      p.ratio_bound = p.ratio(n);
      p.ratio_at = n;
    }
  }
  return p;
}

std::vector<int> sphere_condition_depths(const GrowthProfile& profile, const Rational& eps) {
  if (!(eps.num > 0 && eps.num < eps.den)) throw ArgumentError("epsilon must lie strictly between 0 and 1");
  std::vector<int> out;
  // 3 |S| <= 2 n (1 - eps)  <=>  3 |S| den <= 2 n (den - num)
  for (int n = 1; n <= profile.R; ++n) {
    const auto lhs = static_cast<__int128>(3) * static_cast<__int128>(profile.sphere[n]) * eps.den;
    const auto rhs = static_cast<__int128>(2) * n * (eps.den - eps.num);
    if (lhs <= rhs) out.push_back(n);
  }
  return out;
}

}  // namespace symbreak
