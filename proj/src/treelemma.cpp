#include "ksp/treelemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <unordered_map>

#include "text_io.hpp"

namespace ksp {

namespace {

bool labels_meet(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

// floor(2 (3/2)^j) = floor(3^j / 2^(j-1)) for j >= 1.
std::int64_t layer_size(int j) {
  if (j <= 0) return 1;
  if (j >= 39) return std::numeric_limits<std::int64_t>::max();
  std::int64_t p3 = 1;
  for (int t = 0; t < j; ++t) p3 *= 3;
  return p3 >> (j - 1);
}

std::vector<std::vector<int>> incidence(const LabeledMultigraph& h) {
  std::vector<std::vector<int>> inc(h.n);
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    inc[h.edges[e].u].push_back(e);
    inc[h.edges[e].v].push_back(e);
  }
  return inc;
}

int other_end(const LabeledEdge& e, int v) { return e.u == v ? e.v : e.u; }

TreeCertificate make_cert(int root, std::vector<int> vertices,
                          std::vector<int> tree_edges, int e1, int e2) {
  std::sort(vertices.begin(), vertices.end());
  std::sort(tree_edges.begin(), tree_edges.end());
  return TreeCertificate{root, std::move(vertices), std::move(tree_edges), e1,
                         e2};
}

// Parallel-edge configurations that need no tree growth.
std::optional<TreeCertificate> corner_case(const LabeledMultigraph& h) {
  std::map<std::pair<int, int>, std::vector<int>> bundles;
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    auto [u, v] = std::minmax(h.edges[e].u, h.edges[e].v);
    bundles[{u, v}].push_back(e);
  }
  for (const auto& [uv, ids] : bundles)
    if (ids.size() >= 3)
      return make_cert(uv.first, {uv.first, uv.second}, {ids[0]}, ids[1],
                       ids[2]);

  // partner[v]: (neighbor, edge ids) for each doubled edge at v.
  std::vector<std::vector<std::pair<int, std::vector<int>>>> doubled(h.n);
  for (const auto& [uv, ids] : bundles) {
    if (ids.size() != 2) continue;
    doubled[uv.first].push_back({uv.second, ids});
    doubled[uv.second].push_back({uv.first, ids});
  }
  for (int v = 0; v < h.n; ++v) {
    auto& d = doubled[v];
    if (d.size() < 2) continue;
    std::sort(d.begin(), d.end());
    const auto& [u, ab] = d[0];
    const auto& [w, cd] = d[1];
    return make_cert(v, {u, v, w}, {ab[0], cd[0]}, ab[1], cd[1]);
  }
  for (int v = 0; v < h.n; ++v)
    if (doubled[v].empty()) return std::nullopt;
  for (const auto& [uv, ids] : bundles) {
    if (ids.size() != 1) continue;
    auto [u, v] = uv;
    const auto& [u2, ab] = doubled[u][0];
    const auto& [v2, cd] = doubled[v][0];
    return make_cert(u, {u, u2, v, v2}, {ab[0], ids[0], cd[0]}, ab[1], cd[1]);
  }
  return std::nullopt;
}

class TreeGrower {
 public:
  explicit TreeGrower(const LabeledMultigraph& h)
      : h_(h),
        inc_(incidence(h)),
        beta_(beta(h.gamma)),
        depth_(h.n, -1),
        parent_(h.n, -1),
        parent_edge_(h.n, -1),
        tree_edge_(h.edges.size(), 0) {}

  TreeCertificate run() {
    const int root = pick_root();
    depth_[root] = 0;
    layers_.push_back({root});
    std::map<int, int> first_edge;  // neighbor -> lowest edge id
    for (int e : inc_[root]) {
      int w = other_end(h_.edges[e], root);
      if (!first_edge.count(w)) first_edge[w] = e;
    }
    std::vector<int> layer;
    for (auto [w, e] : first_edge) {
      if (layer.size() == 3) break;
      attach(w, root, e, 1);
      layer.push_back(w);
    }
    layers_.push_back(layer);

    for (int i = 1;; ++i) {
      if (static_cast<std::int64_t>(layers_[i].size()) != layer_size(i))
        throw Error(ErrorCode::kInternal,
                    "tree layer " + std::to_string(i) + " has " +
                        std::to_string(layers_[i].size()) + " vertices, expected " +
                        std::to_string(layer_size(i)));
      if (auto cert = grow_or_close(i)) return *cert;
    }
  }

 private:
  int pick_root() const {
    for (int v = 0; v < h_.n; ++v) {
      std::set<int> nb;
      for (int e : inc_[v]) nb.insert(other_end(h_.edges[e], v));
      if (nb.size() >= 3) return v;
    }
    throw Error(ErrorCode::kInternal,
                "no vertex with three distinct neighbors outside the "
                "parallel-edge cases");
  }

  void attach(int v, int parent, int edge, int depth) {
    depth_[v] = depth;
    parent_[v] = parent;
    parent_edge_[v] = edge;
    tree_edge_[edge] = 1;
    for (int c : h_.edges[edge].labels) {
      auto [it, inserted] = shallowest_.try_emplace(c, depth);
      if (!inserted) it->second = std::min(it->second, depth);
    }
  }

  // Label meets a tree edge whose deeper endpoint is at depth <= i - beta.
  bool banned(int e, int i) const {
    for (int c : h_.edges[e].labels) {
      auto it = shallowest_.find(c);
      if (it != shallowest_.end() && it->second <= i - beta_) return true;
    }
    return false;
  }

  struct Witness {
    int extra;      // becomes e1 or e2
    int a, b;       // tree vertices the certificate must reach
    int joined;     // outside vertex pulled into T0, or -1
    int join_edge;  // edge attaching `joined`, or -1
  };

  std::optional<TreeCertificate> grow_or_close(int i) {
    std::vector<int> layer_edges;
    for (int v : layers_[i])
      for (int e : inc_[v])
        if (!tree_edge_[e]) layer_edges.push_back(e);
    std::sort(layer_edges.begin(), layer_edges.end());
    layer_edges.erase(std::unique(layer_edges.begin(), layer_edges.end()),
                      layer_edges.end());

    std::vector<int> back_edges;
    std::map<int, std::vector<int>> outward;  // outside vertex -> usable edges
    int banned_count = 0;
    for (int e : layer_edges) {
      const auto& ed = h_.edges[e];
      if (depth_[ed.u] >= 0 && depth_[ed.v] >= 0) {
        back_edges.push_back(e);
        continue;
      }
      if (banned(e, i)) {
        ++banned_count;
        continue;
      }
      outward[depth_[ed.u] >= 0 ? ed.v : ed.u].push_back(e);
    }

    const std::int64_t target = layer_size(i + 1);
    if (static_cast<std::int64_t>(outward.size()) >= target) {
      std::vector<int> next;
      for (auto& [x, edges] : outward) {
        if (static_cast<std::int64_t>(next.size()) == target) break;
        int e = edges.front();
        attach(x, other_end(h_.edges[e], x), e, i + 1);
        next.push_back(x);
      }
      layers_.push_back(std::move(next));
      return std::nullopt;
    }

    // Growth stalled: every back edge and every second edge into a shared
    // outside vertex closes a cycle; two of them give the certificate.
    std::vector<Witness> witnesses;
    for (int e : back_edges)
      witnesses.push_back({e, h_.edges[e].u, h_.edges[e].v, -1, -1});
    for (auto& [x, edges] : outward) {
      for (std::size_t t = 1; t < edges.size(); ++t) {
        int join = edges[0];
        witnesses.push_back({edges[t], other_end(h_.edges[join], x),
                             other_end(h_.edges[edges[t]], x), x, join});
      }
    }
    if (witnesses.size() < 2)
      throw Error(ErrorCode::kInternal,
                  "tree growth stalled at depth " + std::to_string(i) +
                      " with fewer than two cycle witnesses (layer " +
                      std::to_string(layers_[i].size()) + ", usable outside " +
                      std::to_string(outward.size()) + " < " +
                      std::to_string(target) + ", banned " +
                      std::to_string(banned_count) + ")");
    witnesses.resize(2);
    return close(witnesses);
  }

  TreeCertificate close(const std::vector<Witness>& ws) {
    std::vector<int> anchors;
    for (const auto& w : ws) {
      anchors.push_back(w.a);
      anchors.push_back(w.b);
    }
    int lca = anchors[0];
    for (int v : anchors) lca = lowest_common_ancestor(lca, v);

    std::set<int> vertices{lca};
    std::set<int> edges;
    for (int v : anchors) {
      for (int u = v; u != lca; u = parent_[u]) {
        vertices.insert(u);
        edges.insert(parent_edge_[u]);
      }
    }
    for (const auto& w : ws) {
      if (w.joined < 0) continue;
      vertices.insert(w.joined);
      edges.insert(w.join_edge);
    }
    return make_cert(lca, {vertices.begin(), vertices.end()},
                     {edges.begin(), edges.end()}, ws[0].extra, ws[1].extra);
  }

  int lowest_common_ancestor(int a, int b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return a;
  }

  const LabeledMultigraph& h_;
  std::vector<std::vector<int>> inc_;
  int beta_;
  std::vector<int> depth_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<char> tree_edge_;
  std::unordered_map<int, int> shallowest_;  // symbol -> min tree depth
  std::vector<std::vector<int>> layers_;
};

std::vector<int> tree_depths(const LabeledMultigraph& h,
                             const TreeCertificate& cert) {
  std::vector<std::vector<int>> adj(h.n);
  for (int e : cert.tree_edges) {
    adj[h.edges[e].u].push_back(h.edges[e].v);
    adj[h.edges[e].v].push_back(h.edges[e].u);
  }
  std::vector<int> dist(h.n, -1);
  std::queue<int> q;
  dist[cert.root] = 0;
  q.push(cert.root);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

}  // namespace

void validate(const LabeledMultigraph& h, bool require_min_degree_3) {
  if (h.n < 0) throw PreconditionError("negative vertex count");
  if (h.gamma < 1) throw PreconditionError("gamma must be at least 1");
  std::vector<int> degree(h.n, 0);
  std::unordered_map<int, int> uses;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& ed = h.edges[e];
    const std::string where = "edge " + std::to_string(e + 1) + ": ";
    if (ed.u < 0 || ed.u >= h.n || ed.v < 0 || ed.v >= h.n)
      throw PreconditionError(where + "endpoint out of range");
    if (ed.u == ed.v) throw PreconditionError(where + "self-loop");
    if (static_cast<int>(ed.labels.size()) > h.gamma)
      throw PreconditionError(where + "more than gamma symbols");
    for (std::size_t j = 0; j < ed.labels.size(); ++j) {
      if (ed.labels[j] < 0) throw PreconditionError(where + "negative symbol");
      if (j > 0 && ed.labels[j - 1] >= ed.labels[j])
        throw PreconditionError(where + "symbols not strictly increasing");
      if (++uses[ed.labels[j]] > h.gamma)
        throw PreconditionError("symbol " + std::to_string(ed.labels[j]) +
                                " appears on more than gamma edges");
    }
    ++degree[ed.u];
    ++degree[ed.v];
  }
  if (require_min_degree_3)
    for (int v = 0; v < h.n; ++v)
      if (degree[v] < 3)
        throw PreconditionError("vertex " + std::to_string(v + 1) +
                                " has degree " + std::to_string(degree[v]) +
                                " < 3");
}

int beta(int gamma) {
  if (gamma < 1) throw PreconditionError("gamma must be at least 1");
  const double g = static_cast<double>(gamma);
  return static_cast<int>(std::ceil(std::log(12.0 * g * g) / std::log(1.5)));
}

double tree_vertex_limit(int n) {
  return 4.0 * (std::log(static_cast<double>(n)) / std::log(1.5) + 2.0);
}

TreeCertificate find_bounded_tree(const LabeledMultigraph& h) {
  validate(h, true);
  if (h.n == 0) throw PreconditionError("graph has no vertices");
  TreeCertificate cert;
  if (auto c = corner_case(h))
    cert = *c;
  else
    cert = TreeGrower(h).run();
  std::string reason;
  if (!verify_tree_certificate(h, cert, &reason))
    throw Error(ErrorCode::kInternal,
                "constructed tree certificate fails verification: " + reason);
  return cert;
}

bool verify_tree_certificate(const LabeledMultigraph& h,
                             const TreeCertificate& cert,
                             std::string* reason) {
  auto fail = [&](const std::string& msg) {
    if (reason) *reason = msg;
    return false;
  };
  const int m = static_cast<int>(h.edges.size());
  std::set<int> vs(cert.vertices.begin(), cert.vertices.end());
  if (vs.size() != cert.vertices.size()) return fail("repeated vertex in V0");
  for (int v : vs)
    if (v < 0 || v >= h.n) return fail("vertex out of range");
  if (!vs.count(cert.root)) return fail("root not in V0");
  std::set<int> es(cert.tree_edges.begin(), cert.tree_edges.end());
  if (es.size() != cert.tree_edges.size()) return fail("repeated tree edge");
  for (int e : es) {
    if (e < 0 || e >= m) return fail("tree edge id out of range");
    if (!vs.count(h.edges[e].u) || !vs.count(h.edges[e].v))
      return fail("tree edge leaves V0");
  }
  if (es.size() + 1 != vs.size()) return fail("|E0| != |V0| - 1");
  auto dist = tree_depths(h, cert);
  for (int v : vs)
    if (dist[v] < 0) return fail("T0 is not connected");

  if (static_cast<double>(vs.size()) > tree_vertex_limit(h.n) + 1e-9)
    return fail("|V0| exceeds 4(log_{3/2} n + 2)");

  if (cert.e1 == cert.e2) return fail("e1 equals e2");
  for (int e : {cert.e1, cert.e2}) {
    if (e < 0 || e >= m) return fail("extra edge id out of range");
    if (es.count(e)) return fail("extra edge belongs to T0");
    if (!vs.count(h.edges[e].u) || !vs.count(h.edges[e].v))
      return fail("extra edge has an endpoint outside V0");
  }

  std::map<int, int> degree;
  for (int e : es) {
    ++degree[h.edges[e].u];
    ++degree[h.edges[e].v];
  }
  int leaves = 0;
  for (auto [v, d] : degree)
    if (d == 1) ++leaves;
  if (leaves > 4) return fail("T0 has more than 4 leaves");

  const int b = beta(h.gamma);
  std::vector<int> tree(es.begin(), es.end());
  auto edge_dist = [&](int e) {
    return std::min(dist[h.edges[e].u], dist[h.edges[e].v]);
  };
  for (std::size_t x = 0; x < tree.size(); ++x)
    for (std::size_t y = x + 1; y < tree.size(); ++y) {
      if (!labels_meet(h.edges[tree[x]].labels, h.edges[tree[y]].labels))
        continue;
      if (std::abs(edge_dist(tree[x]) - edge_dist(tree[y])) > b)
        return fail("edges " + std::to_string(tree[x] + 1) + " and " +
                    std::to_string(tree[y] + 1) +
                    " share a symbol but are more than beta levels apart");
    }
  return true;
}

DecomposedSubgraph build_decomposed_subgraph(const LabeledMultigraph& h) {
  DecomposedSubgraph out;
  out.certificate = find_bounded_tree(h);
  const auto& cert = out.certificate;
  const int b = beta(h.gamma);
  out.width_limit = 4 * (b + 3);
  out.vertices = cert.vertices;
  out.edges = cert.tree_edges;
  out.edges.push_back(cert.e1);
  out.edges.push_back(cert.e2);
  std::sort(out.edges.begin(), out.edges.end());

  auto dist = tree_depths(h, cert);
  int max_depth = 0;
  for (int v : cert.vertices) max_depth = std::max(max_depth, dist[v]);
  std::vector<std::vector<int>> layer(max_depth + 1);
  for (int v : cert.vertices) layer[dist[v]].push_back(v);
  const std::set<int> pinned{h.edges[cert.e1].u, h.edges[cert.e1].v,
                             h.edges[cert.e2].u, h.edges[cert.e2].v};
  for (int i = 0; i <= max_depth; ++i) {
    std::set<int> bag(pinned);
    for (int j = std::max(0, i - b - 1); j <= i; ++j)
      bag.insert(layer[j].begin(), layer[j].end());
    out.decomposition.bags.emplace_back(bag.begin(), bag.end());
  }
  return out;
}

DecompositionReport check_decomposed_subgraph(const LabeledMultigraph& h,
                                              const DecomposedSubgraph& d) {
  DecompositionReport rep;
  rep.edge_count = d.edges.size() == d.vertices.size() + 1;
  rep.vertex_bound =
      static_cast<double>(d.vertices.size()) <= tree_vertex_limit(h.n) + 1e-9;

  // H0 as a simple graph on local ids.
  std::map<int, int> local;
  for (int v : d.vertices) local.emplace(v, static_cast<int>(local.size()));
  Graph g(static_cast<int>(local.size()));
  for (int e : d.edges) {
    auto iu = local.find(h.edges[e].u);
    auto iv = local.find(h.edges[e].v);
    if (iu == local.end() || iv == local.end()) return rep;
    g.add_edge(iu->second, iv->second);
  }
  PathDecomposition pd;
  for (const auto& bag : d.decomposition.bags) {
    std::vector<int> lb;
    for (int v : bag) {
      auto it = local.find(v);
      if (it == local.end()) return rep;
      lb.push_back(it->second);
    }
    pd.bags.push_back(std::move(lb));
  }
  rep.valid = validate_decomposition(g, pd);
  rep.width_ok = d.decomposition.width() <= d.width_limit;

  auto bag_has = [&](std::size_t i, int v) {
    const auto& bag = d.decomposition.bags[i];
    return std::binary_search(bag.begin(), bag.end(), v);
  };
  rep.edge_intervals = true;
  for (int e : d.edges) {
    int first = -1, last = -1, count = 0;
    for (std::size_t i = 0; i < d.decomposition.bags.size(); ++i) {
      if (bag_has(i, h.edges[e].u) && bag_has(i, h.edges[e].v)) {
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
        ++count;
      }
    }
    if (count == 0 || last - first + 1 != count) rep.edge_intervals = false;
  }
  rep.label_bags = true;
  for (std::size_t x = 0; x < d.edges.size(); ++x)
    for (std::size_t y = x + 1; y < d.edges.size(); ++y) {
      const auto& a = h.edges[d.edges[x]];
      const auto& c = h.edges[d.edges[y]];
      if (!labels_meet(a.labels, c.labels)) continue;
      bool found = false;
      for (std::size_t i = 0; i < d.decomposition.bags.size() && !found; ++i)
        found = bag_has(i, a.u) && bag_has(i, a.v) && bag_has(i, c.u) &&
                bag_has(i, c.v);
      if (!found) rep.label_bags = false;
    }
  return rep;
}

LabeledMultigraph random_labeled_multigraph(int n, int gamma,
                                            std::uint64_t seed) {
  if (n < 2) throw PreconditionError("need at least 2 vertices");
  if (gamma < 1) throw PreconditionError("gamma must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<int> stubs;
  for (int v = 0; v < n; ++v)
    for (int t = 0; t < 3; ++t) stubs.push_back(v);
  if (stubs.size() % 2) stubs.push_back(static_cast<int>(rng() % n));

  LabeledMultigraph h;
  h.n = n;
  h.gamma = gamma;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000)
      throw Error(ErrorCode::kInternal, "could not avoid self-loops");
    std::shuffle(stubs.begin(), stubs.end(), rng);
    const std::size_t pairs = stubs.size() / 2;
    // Repair self-loops by exchanging endpoints with another random pair.
    for (int fix = 0; fix < 100; ++fix) {
      bool clean = true;
      for (std::size_t p = 0; p < pairs; ++p) {
        if (stubs[2 * p] != stubs[2 * p + 1]) continue;
        clean = false;
        std::size_t q = rng() % pairs;
        std::swap(stubs[2 * p + 1], stubs[2 * q]);
      }
      if (clean) break;
    }
    bool ok = true;
    for (std::size_t p = 0; p < pairs; ++p)
      if (stubs[2 * p] == stubs[2 * p + 1]) ok = false;
    if (!ok) continue;
    h.edges.clear();
    for (std::size_t p = 0; p < pairs; ++p)
      h.edges.push_back({stubs[2 * p], stubs[2 * p + 1], {}});
    break;
  }

  // Each symbol goes on 1..gamma edges that still have room.
  const int m = static_cast<int>(h.edges.size());
  std::vector<int> room(m, gamma);
  std::vector<int> open(m);
  std::iota(open.begin(), open.end(), 0);
  std::uniform_int_distribution<int> uses(1, gamma);
  for (int symbol = 0; !open.empty() && symbol < m * gamma; ++symbol) {
    int want = std::min<int>(uses(rng), static_cast<int>(open.size()));
    std::vector<int> picks;
    std::sample(open.begin(), open.end(), std::back_inserter(picks), want, rng);
    for (int e : picks) {
      h.edges[e].labels.push_back(symbol);
      --room[e];
    }
    open.erase(std::remove_if(open.begin(), open.end(),
                              [&](int e) { return room[e] == 0; }),
               open.end());
    // Leave some edges with spare room so labels are not saturated.
    if (rng() % 4 == 0 && !open.empty()) {
      std::size_t drop = rng() % open.size();
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  }
  validate(h, true);
  return h;
}

LabeledMultigraph read_multigraph(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next();
  if (!header || header->tokens.size() != 5 || header->tokens[0] != "p" ||
      header->tokens[1] != "mgraph")
    throw ParseError(header ? header->number : reader.line_number(),
                     "expected header 'p mgraph <n> <m> <gamma>'");
  LabeledMultigraph h;
  h.n = detail::parse_int<int>(header->tokens[2], header->number);
  const int m = detail::parse_int<int>(header->tokens[3], header->number);
  h.gamma = detail::parse_int<int>(header->tokens[4], header->number);
  if (h.n < 0 || m < 0 || h.gamma < 1)
    throw ParseError(header->number, "invalid header values");
  std::unordered_map<int, int> uses;
  while (auto line = reader.next()) {
    const auto& t = line->tokens;
    if (t[0] != "e" || t.size() < 3)
      throw ParseError(line->number, "expected 'e <u> <v> <symbols...>'");
    LabeledEdge e;
    e.u = detail::parse_int<int>(t[1], line->number) - 1;
    e.v = detail::parse_int<int>(t[2], line->number) - 1;
    if (e.u < 0 || e.u >= h.n || e.v < 0 || e.v >= h.n)
      throw ParseError(line->number, "vertex out of range");
    if (e.u == e.v) throw ParseError(line->number, "self-loop");
    for (std::size_t j = 3; j < t.size(); ++j) {
      int c = detail::parse_int<int>(t[j], line->number);
      if (c < 0) throw ParseError(line->number, "negative symbol");
      e.labels.push_back(c);
    }
    std::sort(e.labels.begin(), e.labels.end());
    if (std::adjacent_find(e.labels.begin(), e.labels.end()) != e.labels.end())
      throw ParseError(line->number, "repeated symbol");
    if (static_cast<int>(e.labels.size()) > h.gamma)
      throw ParseError(line->number, "more than gamma symbols");
    for (int c : e.labels)
      if (++uses[c] > h.gamma)
        throw ParseError(line->number, "symbol " + std::to_string(c) +
                                           " used on more than gamma edges");
    h.edges.push_back(std::move(e));
  }
  if (static_cast<int>(h.edges.size()) != m)
    throw ParseError(reader.line_number(),
                     "header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(h.edges.size()));
  return h;
}

void write_multigraph(std::ostream& out, const LabeledMultigraph& h) {
  out << "p mgraph " << h.n << ' ' << h.edges.size() << ' ' << h.gamma << '\n';
  for (const auto& e : h.edges) {
    out << "e " << e.u + 1 << ' ' << e.v + 1;
    for (int c : e.labels) out << ' ' << c;
    out << '\n';
  }
}

TreeCertificate read_tree_certificate(std::istream& in) {
  detail::LineReader reader(in);
  TreeCertificate cert;
  bool have_root = false, have_vertices = false, have_tree = false,
       have_extra = false;
  while (auto line = reader.next()) {
    const auto& t = line->tokens;
    auto ids = [&](std::size_t from) {
      std::vector<int> v;
      for (std::size_t j = from; j < t.size(); ++j)
        v.push_back(detail::parse_int<int>(t[j], line->number) - 1);
      return v;
    };
    if (t[0] == "root" && t.size() == 2) {
      cert.root = ids(1)[0];
      have_root = true;
    } else if (t[0] == "vertices") {
      cert.vertices = ids(1);
      have_vertices = true;
    } else if (t[0] == "tree") {
      cert.tree_edges = ids(1);
      have_tree = true;
    } else if (t[0] == "extra" && t.size() == 3) {
      auto v = ids(1);
      cert.e1 = v[0];
      cert.e2 = v[1];
      have_extra = true;
    } else {
      throw ParseError(line->number, "unknown certificate line '" + t[0] + "'");
    }
  }
  if (!have_root || !have_vertices || !have_tree || !have_extra)
    throw ParseError(reader.line_number(),
                     "certificate needs root, vertices, tree and extra lines");
  return cert;
}

void write_tree_certificate(std::ostream& out, const TreeCertificate& cert) {
  out << "root " << cert.root + 1 << '\n' << "vertices";
  for (int v : cert.vertices) out << ' ' << v + 1;
  out << '\n' << "tree";
  for (int e : cert.tree_edges) out << ' ' << e + 1;
  out << '\n' << "extra " << cert.e1 + 1 << ' ' << cert.e2 + 1 << '\n';
}

}  // namespace ksp
