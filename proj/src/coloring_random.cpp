#include <charconv>
#include <cmath>

#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"

namespace symbreak {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double vertex_uniform(std::uint64_t seed, const VertexId& x) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char ch : x.str()) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t state = seed ^ h;
  splitmix64(state);
  const std::uint64_t bits = splitmix64(state);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

RandomSchedule RandomSchedule::parse(std::string_view text, std::uint64_t seed) {
  auto number = [&](std::string_view s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw ScheduleInvalid("bad number in schedule '" + std::string(text) + "'");
    return v;
  };
  RandomSchedule s;
  s.seed_ = seed;
  if (text == "zero") {
    s.kind_ = Kind::zero;
  } else if (text == "harmonic" || text.empty()) {
    s.kind_ = Kind::harmonic;
  } else if (text.starts_with("power:")) {
    const double a = number(text.substr(6));
    if (!(a > 0 && a <= 1))
      throw ScheduleInvalid("power schedule needs 0 < a <= 1 so that p_n -> 0 and the sum diverges");
    s.kind_ = Kind::power;
    s.exponent_ = a;
  } else if (text.starts_with("constant:")) {
    const double c = number(text.substr(9));
    if (c != 0) throw ScheduleInvalid("constant schedule " + std::string(text.substr(9)) + " does not tend to 0");
    s.kind_ = Kind::zero;
  } else {
    throw ScheduleInvalid("unknown schedule '" + std::string(text) + "'");
  }
  return s;
}

double RandomSchedule::p(int n) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::harmonic: return 1.0 / (n + 1.0);
    case Kind::power: return std::pow(n + 1.0, -exponent_);
  }
  return 0.0;
}

std::string RandomSchedule::str() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::harmonic: return "harmonic";
    case Kind::power: {
      char buf[32];
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, exponent_);
      return "power:" + std::string(buf, p);
    }
  }
  return "zero";
}

RandomSchedule RandomSchedule::with_seed(std::uint64_t s) const {
  RandomSchedule out = *this;
  out.seed_ = s;
  return out;
}

Coloring random_coloring(const GraphHandle& g, const VertexId& v, int R, const RandomSchedule& s,
                         std::size_t budget) {
  const BallView b = ball(g, v, R, budget);
  Coloring c;
  c.graph = g;
  c.root = v;
  c.radius = R;
  c.strategy = "random";
  c.parameters = {{"schedule", s.str()}, {"seed", std::to_string(s.seed())}, {"R", std::to_string(R)}};
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    if (vertex_uniform(s.seed(), b.vertex(i)) < s.p(b.distance(i))) c.blue.insert(b.vertex(i));
  if (!s.divergent()) c.notes.push_back("schedule sum converges; not an admissible schedule for the theorem");
  return c;
}

Coloring explicit_coloring(const GraphHandle& g, const VertexId& root, int radius, std::set<VertexId> blue,
                           std::size_t budget) {
  if (radius < 0) throw ArgumentError("radius must be nonnegative");
  if (!blue.empty()) {
    const BallView b = ball(g, root, radius, budget);
    for (const auto& x : blue)
      if (!b.contains(x)) throw ArgumentError("blue vertex " + x.str() + " lies outside the construction ball");
  }
  Coloring c;
  c.graph = g;
  c.root = root;
  c.radius = radius;
  c.strategy = "explicit";
  c.parameters = {{"R", std::to_string(radius)}};
  c.blue = std::move(blue);
  return c;
}

Coloring example_gadget_coloring(int radius, std::size_t budget) {
  const GraphHandle g = example_graph();
  const BallView b = ball(g, example_root_v(), radius, budget);
  std::set<VertexId> blue;
  for (const auto& x : b.vertices())
    if (x.str().starts_with("g1:")) blue.insert(x);
  Coloring c;
  c.graph = g;
  c.root = example_root_v();
  c.radius = radius;
  c.strategy = "explicit";
  c.parameters = {{"R", std::to_string(radius)}, {"rule", "first gadget vertex of every pair"}};
  c.blue = std::move(blue);
  return c;
}

}  // namespace symbreak
