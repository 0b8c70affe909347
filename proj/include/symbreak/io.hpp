#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "symbreak/ball.hpp"
#include "symbreak/colorings.hpp"
#include "symbreak/spheres.hpp"

namespace symbreak {

using Json = nlohmann::ordered_json;

Json to_json(const Coloring& c);
/// Rebuilds the graph from the "family" field. ArgumentError on schema
/// violations.
Coloring coloring_from_json(const Json& j);

Json to_json(const DscReport& r);
Json to_json(const GrowthProfile& p);
Json to_json(const DensityCurve& c);
Json to_json(const TransferReport& r);
Json to_json(const VerifyReport& r);
Json to_json(const MonteCarloReport& r);
Json to_json(const BallView& b);

/// Columns n, sphere, ball, ratio (ratio of B(n+1) to B(n), empty on the last row).
std::string growth_csv(const GrowthProfile& p);
/// Columns n, blue_count, ball_count, ratio.
std::string density_csv(const DensityCurve& c);
/// Columns n, mean_density.
std::string montecarlo_csv(const MonteCarloReport& r);

/// Undirected DOT; blue vertices get fillcolor attributes when a coloring is given.
std::string ball_dot(const BallView& b, const Coloring* coloring = nullptr);

/// Writes through a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace symbreak
