#include "ksp/pathdecomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace ksp {

void Graph::add_edge(int u, int v) {
  if (u == v) return;
  auto& au = adj_.at(u);
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return;
  au.insert(it, v);
  auto& av = adj_.at(v);
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
  const auto& au = adj_.at(u);
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_vertices(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int PathDecomposition::width() const {
  std::size_t best = 0;
  for (const auto& b : bags) best = std::max(best, b.size());
  return best == 0 ? 0 : static_cast<int>(best) - 1;
}

int NicePathDecomposition::width() const { return plain().width(); }

PathDecomposition NicePathDecomposition::plain() const {
  PathDecomposition pd;
  pd.bags.reserve(bags.size());
  for (const auto& b : bags) pd.bags.push_back(b.bag);
  return pd;
}

bool has_contiguous_occurrences(const PathDecomposition& pd) {
  int max_vertex = -1;
  for (const auto& b : pd.bags)
    for (int v : b) max_vertex = std::max(max_vertex, v);
  std::vector<int> last(static_cast<std::size_t>(max_vertex) + 1, -1);
  for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
    auto bag = pd.bags[i];
    std::sort(bag.begin(), bag.end());
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) return false;
    for (int v : bag) {
      if (v < 0) return false;
      if (last[v] >= 0 && last[v] != i - 1) return false;
      last[v] = i;
    }
  }
  return true;
}

bool validate_decomposition(const Graph& g, const PathDecomposition& pd) {
  const int n = g.num_vertices();
  for (const auto& b : pd.bags)
    for (int v : b)
      if (v < 0 || v >= n) return false;
  if (!has_contiguous_occurrences(pd)) return false;
  std::vector<int> first(n, -1), last(n, -1);
  for (int i = 0; i < static_cast<int>(pd.bags.size()); ++i) {
    for (int v : pd.bags[i]) {
      if (first[v] < 0) first[v] = i;
      last[v] = i;
    }
  }
  for (int v = 0; v < n; ++v)
    if (first[v] < 0) return false;
  // With contiguous intervals, an edge is covered iff the intervals overlap.
  for (auto [u, v] : g.edges())
    if (std::max(first[u], first[v]) > std::min(last[u], last[v]))
      return false;
  return true;
}

NicePathDecomposition make_nice(const PathDecomposition& pd) {
  if (!has_contiguous_occurrences(pd))
    throw PreconditionError(
        "path decomposition has a vertex in non-contiguous bags");
  NicePathDecomposition out;
  std::vector<int> cur;
  out.bags.push_back({BagKind::kFirst, -1, cur});
  auto step = [&](std::vector<int> target) {
    std::sort(target.begin(), target.end());
    std::vector<int> gone, fresh;
    std::set_difference(cur.begin(), cur.end(), target.begin(), target.end(),
                        std::back_inserter(gone));
    std::set_difference(target.begin(), target.end(), cur.begin(), cur.end(),
                        std::back_inserter(fresh));
    for (int v : gone) {
      cur.erase(std::lower_bound(cur.begin(), cur.end(), v));
      out.bags.push_back({BagKind::kForget, v, cur});
    }
    for (int v : fresh) {
      cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
      out.bags.push_back({BagKind::kIntroduce, v, cur});
    }
  };
  for (const auto& b : pd.bags) step(b);
  step({});
  if (out.bags.size() == 1)
    out.bags.push_back({BagKind::kLast, -1, {}});
  else
    out.bags.back().kind = BagKind::kLast;
  return out;
}

PathDecomposition decomposition_from_order(const Graph& g,
                                           std::span<const int> order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n)
    throw PreconditionError("order must list every vertex once");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    if (v < 0 || v >= n || pos[v] >= 0)
      throw PreconditionError("order must list every vertex once");
    pos[v] = i;
  }
  // reach[v]: largest position among v and its neighbors.
  std::vector<int> reach(n);
  for (int v = 0; v < n; ++v) {
    reach[v] = pos[v];
    for (int u : g.neighbors(v)) reach[v] = std::max(reach[v], pos[u]);
  }
  PathDecomposition pd;
  if (n == 0) {
    pd.bags.push_back({});
    return pd;
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> bag;
    for (int j = 0; j < i; ++j)
      if (reach[order[j]] >= i) bag.push_back(order[j]);
    bag.push_back(order[i]);
    std::sort(bag.begin(), bag.end());
    pd.bags.push_back(std::move(bag));
  }
  return pd;
}

PathwidthResult exact_pathwidth(const Graph& g) {
  const int n = g.num_vertices();
  if (n > kExactPathwidthLimit)
    throw SizeLimitError("exact pathwidth supports at most " +
                         std::to_string(kExactPathwidthLimit) +
                         " vertices, got " + std::to_string(n));
  if (n == 0) return {0, PathDecomposition{{{}}}};
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) adj[v] |= std::uint32_t{1} << u;

  const std::uint32_t full = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);
  // best[S]: minimum over orderings of S placed first of the largest
  // boundary among its prefixes.
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int boundary = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (adj[v] & ~s) ++boundary;
    }
    int inner = n;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      inner = std::min<int>(inner, best[s & ~(std::uint32_t{1} << v)]);
    }
    best[s] = static_cast<std::uint8_t>(std::max(boundary, inner));
  }

  std::vector<int> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    int pick = -1;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (best[s & ~(std::uint32_t{1} << v)] <= best[full]) {
        pick = v;
        break;
      }
    }
    order[i] = pick;
    s &= ~(std::uint32_t{1} << pick);
  }
  PathwidthResult res;
  res.width = best[full];
  res.witness = decomposition_from_order(g, order);
  if (res.witness.width() != res.width)
    throw Error(ErrorCode::kInternal, "pathwidth witness width mismatch");
  return res;
}

Graph induced_conflict_subgraph(const ConflictGraph& cg,
                                std::span<const SetIndex> x,
                                std::vector<SetIndex>* vertex_sets) {
  std::vector<SetIndex> closed(x.begin(), x.end());
  auto open = neighborhood(cg, x);
  closed.insert(closed.end(), open.begin(), open.end());
  std::sort(closed.begin(), closed.end());
  closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  Graph g(static_cast<int>(closed.size()));
  auto index_of = [&](SetIndex s) {
    return static_cast<int>(std::lower_bound(closed.begin(), closed.end(), s) -
                            closed.begin());
  };
  for (SetIndex s : x)
    for (SetIndex m : cg.member_neighbors(s)) g.add_edge(index_of(s), index_of(m));
  if (vertex_sets) *vertex_sets = std::move(closed);
  return g;
}

int swap_pathwidth(const SetFamily& family, const Packing& packing,
                   std::span<const SetIndex> x) {
  ConflictGraph cg(family, packing);
  return exact_pathwidth(induced_conflict_subgraph(cg, x, nullptr)).width;
}

}  // namespace ksp
