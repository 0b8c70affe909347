#include <algorithm>
#include <bit>
#include <bitset>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "symbreak/automorphisms.hpp"
#include "symbreak/errors.hpp"

namespace symbreak {

int chain_length_bound(int n) {
  if (n < 1) throw ArgumentError("chain length bound needs n >= 1");
  return (3 * n + 1) / 2 - std::popcount(static_cast<unsigned>(n)) - 1;
}

int chain_length_oracle(int n) {
  if (n < 1 || n > 5) throw ArgumentError("chain length oracle supports 1 <= n <= 5");

  std::vector<std::vector<int>> elems;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do elems.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[elems[i]] = i;

  std::vector<std::vector<int>> mul(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = elems[b][elems[a][x]];
      mul[a][b] = index[c];
    }

  using Set = std::bitset<120>;
  // In a finite group, closure under multiplication suffices.
  auto close = [&](Set s) {
    std::vector<int> members;
    for (int i = 0; i < order; ++i)
      if (s[i]) members.push_back(i);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        for (int c : {mul[members[i]][members[j]], mul[members[j]][members[i]]})
          if (!s[c]) {
            s[c] = true;
            members.push_back(c);
          }
    return s;
  };

  auto key = [](const Set& s) { return s.to_string(); };
  Set trivial;
  trivial[0] = true;  // elems[0] is the identity
  std::map<std::string, Set> subgroups{{key(trivial), trivial}};
  std::vector<Set> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const auto& h : frontier)
      for (int g = 0; g < order; ++g) {
        if (h[g]) continue;
        Set bigger = h;
        bigger[g] = true;
        bigger = close(bigger);
        if (subgroups.emplace(key(bigger), bigger).second) next.push_back(bigger);
      }
    frontier = std::move(next);
  }

  std::vector<Set> all;
  for (const auto& [k, s] : subgroups) all.push_back(s);
  std::sort(all.begin(), all.end(), [](const Set& a, const Set& b) { return a.count() < b.count(); });
  std::vector<int> longest(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (all[j].count() < all[i].count() && (all[j] & all[i]) == all[j])
        longest[i] = std::max(longest[i], longest[j] + 1);
  return longest.back();
}

}  // namespace symbreak
