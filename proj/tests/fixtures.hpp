#pragma once

// Shared instances and slow, independent oracles for the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ksp/core.hpp"
#include "ksp/pathdecomp.hpp"

namespace fixtures {

using ksp::SetFamily;
using ksp::SetIndex;

// S0={1,2,3}, S1={1,4,5}, S2={2,6,7}, S3={4,5,6} over 1..7.
inline SetFamily e1() {
  return SetFamily(7, 3, {{1, 2, 3}, {1, 4, 5}, {2, 6, 7}, {4, 5, 6}});
}

// Random family with sets of size 1..k (or exactly k when `uniform`).
inline SetFamily random_family(std::mt19937_64& rng, int n, int m, int k,
                               bool uniform = false) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> sets;
  int guard = 0;
  while (static_cast<int>(sets.size()) < m && guard++ < 100000) {
    int size = uniform ? k : 1 + static_cast<int>(rng() % k);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> s(pool.begin(), pool.begin() + size);
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second) sets.push_back(s);
  }
  return SetFamily(n, k, sets);
}

inline bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

// Maximum packing size by enumerating all subsets (<= 20 sets).
inline int brute_max_packing(const SetFamily& f) {
  const int m = f.num_sets();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int cnt = __builtin_popcount(mask);
    if (cnt <= best) continue;
    std::vector<int> used(f.n_elements() + 1, 0);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      if (mask >> i & 1)
        for (int e : f.sets()[i])
          if (used[e]++) ok = false;
    if (ok) best = cnt;
  }
  return best;
}

// Definition check from scratch: X pairwise disjoint non-members, and fewer
// members meet X than |X|.
inline bool brute_is_improving(const SetFamily& f, const std::vector<int>& members,
                               const std::vector<int>& x) {
  if (x.empty()) return false;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (std::count(members.begin(), members.end(), x[a])) return false;
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (!disjoint(f.sets()[x[a]], f.sets()[x[b]])) return false;
  }
  int hit = 0;
  for (int m : members) {
    bool meets = false;
    for (int s : x)
      if (!disjoint(f.sets()[m], f.sets()[s])) meets = true;
    hit += meets;
  }
  return hit < static_cast<int>(x.size());
}

// Pathwidth by trying every vertex order (<= 8 vertices): the width of an
// order is the largest number of earlier vertices with a later neighbor,
// counted at each step together with the current vertex.
inline int brute_pathwidth(const ksp::Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  int best = n;
  do {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    int width = 0;
    for (int i = 0; i < n; ++i) {
      int bag = 1;
      for (int j = 0; j < i; ++j) {
        bool open = false;
        for (int w : g.neighbors(order[j]))
          if (pos[w] >= i) open = true;
        bag += open;
      }
      width = std::max(width, bag - 1);
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace fixtures
