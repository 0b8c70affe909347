#pragma once

// Independent reference computations for the unit tests. Deliberately naive.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "symbreak/ball.hpp"

namespace oracle {

// All-pairs distances by Floyd-Warshall; -1 for unreachable.
inline std::vector<std::vector<int>> all_pairs(const symbreak::FiniteGraph& f) {
  const int n = f.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, w] : f.edges()) d[u][w] = d[w][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

inline bool is_automorphism(const symbreak::FiniteGraph& f, const std::vector<int>& p) {
  for (int u = 0; u < f.size(); ++u)
    for (int w = u + 1; w < f.size(); ++w)
      if (f.has_edge(u, w) != f.has_edge(p[u], p[w])) return false;
  return true;
}

// Every automorphism by trying all n! permutations.
inline std::set<std::vector<int>> brute_automorphisms(const symbreak::FiniteGraph& f) {
  std::vector<int> p(f.size());
  std::iota(p.begin(), p.end(), 0);
  std::set<std::vector<int>> out;
  do {
    if (is_automorphism(f, p)) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace oracle
