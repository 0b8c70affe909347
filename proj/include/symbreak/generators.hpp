#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symbreak/ball.hpp"
#include "symbreak/graph.hpp"

namespace symbreak {

enum class FamilyTag {
  regular_tree,
  biinfinite_path,
  grid2d,
  cartesian_product,
  example_graph,
  twin_leaf_path,
  finite_adjacency,
};

std::string_view to_string(FamilyTag tag);
FamilyTag family_tag_from_string(std::string_view name);

struct FamilySpec {
  FamilyTag tag = FamilyTag::biinfinite_path;
  int degree = 3;  // regular_tree only
  std::shared_ptr<const FamilySpec> left, right;  // cartesian_product only
  int vertex_count = 0;  // finite_adjacency only
  std::vector<Edge> edges;

  /// Throws ArgumentError on bad parameters (tree degree < 3, product of a
  /// finite factor, malformed adjacency).
  void validate() const;
  bool infinite_diameter() const;
  /// Canonical "family=... key=value" form.
  std::string to_string() const;
};

/// Parse whitespace-separated key=value tokens. Product factors use the keys
/// left/right with dotted parameters, e.g.
///   family=cartesian_product left=biinfinite_path right=regular_tree right.d=4
/// Finite graphs: family=finite_adjacency n=4 edges=0-1,1-2,2-3
FamilySpec parse_family_spec(std::string_view text);
FamilySpec family_spec_from_map(const std::map<std::string, std::string>& kv,
                                const std::string& prefix = "");

GraphHandle make_generator(const FamilySpec& spec);
GraphHandle make_generator(std::string_view spec_text);

// Convenience constructors used throughout tests and tools.
GraphHandle biinfinite_path();
GraphHandle grid2d();
GraphHandle regular_tree(int degree);
GraphHandle twin_leaf_path();
GraphHandle example_graph();
GraphHandle cartesian_product(const FamilySpec& left, const FamilySpec& right);
GraphHandle finite_adjacency(int vertex_count, std::vector<Edge> edges);

/// |P_n| of the two-sided path construction (|P_1| = 1,
/// |P_n| = n * sum_{i<n} |P_i|). Memoized table; ArgumentError for n < 1 or
/// when the value no longer fits in 64 bits.
std::uint64_t example_path_size(int n);

/// (|P_n|, 4 sum_{i<n}|P_i| + 3|P_n|), the published ball-size recursion.
std::pair<std::uint64_t, std::uint64_t> example_graph_sizes(int n);

// Encodings of distinguished example_graph vertices.
VertexId example_p(int n, std::uint64_t k);
VertexId example_q(int n, std::uint64_t k);
VertexId example_gadget(int which, int n, std::uint64_t k);  // which in {1, 2}
inline VertexId example_root_v() { return example_p(1, 0); }
inline VertexId example_root_vprime() { return example_q(1, 0); }

inline const VertexId kTwinLeafU{"twin:0"};
inline const VertexId kTwinLeafW{"twin:1"};
inline const VertexId kTreeRoot{"\xCE\xB5"};  // "ε"

}  // namespace symbreak
