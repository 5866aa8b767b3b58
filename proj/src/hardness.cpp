#include "ksp/hardness.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <istream>
#include <ostream>
#include <set>

#include "ksp/solvers.hpp"
#include "text_io.hpp"

namespace ksp {

namespace {

std::int64_t pow4(int h) { return std::int64_t{1} << (2 * h); }

bool odd_level(int i) { return (std::bit_width(static_cast<unsigned>(i)) - 1) % 2 == 1; }

int pair_rank(int i, int j, int k) {
  // Position of (i, j), i < j, in lexicographic order of pairs over [0, k).
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

}  // namespace

void validate(const MulticoloredCliqueInstance& inst) {
  if (inst.k < 1) throw PreconditionError("k must be at least 1");
  const int n = inst.graph.num_vertices();
  if (static_cast<int>(inst.color.size()) != n)
    throw PreconditionError("every vertex needs a color");
  for (int v = 0; v < n; ++v)
    if (inst.color[v] < 0 || inst.color[v] >= inst.k)
      throw PreconditionError("color out of range at vertex " +
                              std::to_string(v + 1));
}

Amplifier make_amplifier(const std::string& prefix, int h) {
  if (h < 1 || h > 12) throw PreconditionError("amplifier height must be in [1, 12]");
  const int leaves = static_cast<int>(pow4(h));
  Amplifier a;
  for (int j = 1; j <= 2 * leaves - 1; ++j)
    a.elements.push_back(prefix + "_" + std::to_string(j));
  for (int i = 1; i < leaves; ++i) a.sets.push_back({i, 2 * i, 2 * i + 1});
  return a;
}

std::int64_t reduction_universe_size(int h, int padded_vertices) {
  const std::int64_t k = pow4(h);
  const std::int64_t n = padded_vertices;
  return (2 * k - 1) * (n + 1) + 2 * n + k * (k - 1) / 2 + 2 * k;
}

SetIndex ReductionOutput::amplifier_set(int owner, int i) const {
  const int per = static_cast<int>(pow4(h)) - 1;
  return (owner + 1) * per + (i - 1);
}

ElementId ReductionOutput::amplifier_element(int owner, int j) const {
  const int per = 2 * static_cast<int>(pow4(h)) - 1;
  return (owner + 1) * per + j;
}

ReductionOutput reduce_mcc(const MulticoloredCliqueInstance& instance) {
  validate(instance);
  ReductionOutput out;
  out.original_vertices = instance.graph.num_vertices();
  out.original_k = instance.k;
  out.h = 1;
  while (pow4(out.h) < instance.k) ++out.h;
  const int k = static_cast<int>(pow4(out.h));
  const int n0 = out.original_vertices;
  const int n = n0 + (k - instance.k);

  // Padding: one universal vertex per missing color.
  MulticoloredCliqueInstance& pad = out.padded;
  pad.k = k;
  pad.graph = Graph(n);
  pad.color = instance.color;
  for (auto [u, v] : instance.graph.edges()) pad.graph.add_edge(u, v);
  for (int v = n0; v < n; ++v) {
    pad.color.push_back(instance.k + (v - n0));
    for (int u = 0; u < n; ++u)
      if (u != v) pad.graph.add_edge(u, v);
  }

  const int amp = 2 * k - 1;
  const ElementId prime_base = amp * (n + 1);
  const ElementId s_base = prime_base + 2 * n;
  const ElementId l_base = s_base + k * (k - 1) / 2;
  const int universe = l_base + 2 * k;
  auto vprime = [&](int v) { return prime_base + 2 * v + 1; };
  auto vdprime = [&](int v) { return prime_base + 2 * v + 2; };
  auto s_elem = [&](int i, int j) { return s_base + pair_rank(i, j, k) + 1; };
  auto l_elem = [&](int i) { return l_base + i; };

  out.element_names.assign(static_cast<std::size_t>(universe) + 1, "");
  for (int owner = -1; owner < n; ++owner) {
    const std::string prefix = owner < 0 ? "x" : "v" + std::to_string(owner + 1);
    Amplifier a = make_amplifier(prefix, out.h);
    for (int j = 1; j <= amp; ++j)
      out.element_names[out.amplifier_element(owner, j)] = a.elements[j - 1];
  }
  for (int v = 0; v < n; ++v) {
    out.element_names[vprime(v)] = "v" + std::to_string(v + 1) + "_1'";
    out.element_names[vdprime(v)] = "v" + std::to_string(v + 1) + "_1''";
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      out.element_names[s_elem(i, j)] =
          "s_(" + std::to_string(i) + "," + std::to_string(j) + ")";
  for (int i = 1; i <= 2 * k; ++i)
    out.element_names[l_elem(i)] = "l_" + std::to_string(i);

  std::vector<std::vector<ElementId>> sets;
  std::vector<SetIndex> f0;
  auto add = [&](std::vector<ElementId> s, SetGroup g, int vertex, bool in_f0) {
    std::sort(s.begin(), s.end());
    if (in_f0) f0.push_back(static_cast<SetIndex>(sets.size()));
    sets.push_back(std::move(s));
    out.set_group.push_back(g);
    out.set_vertex.push_back(vertex);
  };

  for (int owner = -1; owner < n; ++owner)
    for (int i = 1; i < k; ++i)
      add({out.amplifier_element(owner, i), out.amplifier_element(owner, 2 * i),
           out.amplifier_element(owner, 2 * i + 1)},
          owner < 0 ? SetGroup::kTopAmplifier : SetGroup::kVertexAmplifier, owner,
          odd_level(i));
  for (int v = 0; v < n; ++v)
    add({out.amplifier_element(v, 1), vprime(v), vdprime(v)},
        SetGroup::kVertexStart, v, true);
  for (int v = 0; v < n; ++v)
    add({out.amplifier_element(-1, k + pad.color[v]), vprime(v), vdprime(v)},
        SetGroup::kColorChoice, v, false);
  for (auto [a, b] : pad.graph.edges()) {
    int u = a, v = b;
    if (pad.color[u] == pad.color[v]) continue;
    if (pad.color[u] > pad.color[v]) std::swap(u, v);
    add({out.amplifier_element(u, k + pad.color[v]),
         out.amplifier_element(v, k + pad.color[u]),
         s_elem(pad.color[u], pad.color[v])},
        SetGroup::kEdge, -1, false);
  }
  for (int v = 0; v < n; ++v) {
    const int c = pad.color[v];
    add({out.amplifier_element(v, k + c), l_elem(2 * c + 1), l_elem(2 * c + 2)},
        SetGroup::kColorTail, v, false);
  }
  for (int i = 1; i <= (2 * k) / 3; ++i)
    add({l_elem(3 * i - 2), l_elem(3 * i - 1), l_elem(3 * i)}, SetGroup::kTailFill,
        -1, true);
  {
    std::vector<ElementId> s_all;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) s_all.push_back(s_elem(i, j));
    for (std::size_t t = 0; t + 2 < s_all.size(); t += 3)
      add({s_all[t], s_all[t + 1], s_all[t + 2]}, SetGroup::kPairFill, -1, true);
  }

  out.family = SetFamily(universe, 3, std::move(sets));
  out.f0 = make_packing(out.family, f0);

  if (reduction_universe_size(out.h, n) != universe || universe % 3 != 0)
    throw Error(ErrorCode::kInternal, "reduction universe size mismatch");
  if (out.f0.size() != universe / 3 - 1)
    throw Error(ErrorCode::kInternal, "reduction F0 has the wrong size");
  std::vector<char> covered(static_cast<std::size_t>(universe) + 1, 0);
  for (SetIndex s : out.f0.members)
    for (ElementId e : out.family.set(s)) covered[e] = 1;
  for (ElementId e = 1; e <= universe; ++e) {
    const bool expect_uncovered = e == out.amplifier_element(-1, 1) ||
                                  e == l_elem(2 * k - 1) || e == l_elem(2 * k);
    if (static_cast<bool>(covered[e]) == expect_uncovered)
      throw Error(ErrorCode::kInternal, "reduction F0 covers the wrong elements");
  }
  return out;
}

bool is_multicolored_clique(const MulticoloredCliqueInstance& inst,
                            const std::vector<int>& vertices) {
  if (static_cast<int>(vertices.size()) != inst.k) return false;
  std::vector<char> seen(inst.k, 0);
  for (int v : vertices) {
    if (v < 0 || v >= inst.graph.num_vertices()) return false;
    if (seen[inst.color[v]]) return false;
    seen[inst.color[v]] = 1;
  }
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (!inst.graph.has_edge(vertices[a], vertices[b])) return false;
  return true;
}

void for_each_multicolored_clique(
    const MulticoloredCliqueInstance& inst,
    const std::function<bool(const std::vector<int>&)>& visit) {
  validate(inst);
  std::vector<std::vector<int>> by_color(inst.k);
  for (int v = 0; v < inst.graph.num_vertices(); ++v)
    by_color[inst.color[v]].push_back(v);
  std::vector<int> pick;
  // Returns false once the visitor asks to stop.
  auto rec = [&](auto&& self, int c) -> bool {
    if (c == inst.k) {
      auto sorted = pick;
      std::sort(sorted.begin(), sorted.end());
      return visit(sorted);
    }
    for (int v : by_color[c]) {
      bool ok = true;
      for (int u : pick)
        if (!inst.graph.has_edge(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(v);
      if (!self(self, c + 1)) return false;
      pick.pop_back();
    }
    return true;
  };
  rec(rec, 0);
}

std::optional<std::vector<int>> find_multicolored_clique(
    const MulticoloredCliqueInstance& inst) {
  std::optional<std::vector<int>> found;
  for_each_multicolored_clique(inst, [&](const std::vector<int>& k) {
    found = k;
    return false;
  });
  return found;
}

Packing witness_packing(const ReductionOutput& out, std::vector<int> clique) {
  const auto& pad = out.padded;
  const int k = pad.k;
  const int n = pad.graph.num_vertices();
  if (static_cast<int>(clique.size()) == out.original_k && out.original_k != k)
    for (int v = out.original_vertices; v < n; ++v) clique.push_back(v);
  std::sort(clique.begin(), clique.end());
  if (!is_multicolored_clique(pad, clique))
    throw PreconditionError("not a multicolored clique of the instance");

  std::vector<char> in_k(n, 0);
  for (int v : clique) in_k[v] = 1;
  std::vector<SetIndex> f1;
  // Top amplifier keeps its even levels; the clique's vertex amplifiers do
  // the same, all others the odd levels.
  for (int i = 1; i < k; ++i)
    if (!odd_level(i)) f1.push_back(out.amplifier_set(-1, i));
  for (int v = 0; v < n; ++v)
    for (int i = 1; i < k; ++i)
      if (odd_level(i) != static_cast<bool>(in_k[v]))
        f1.push_back(out.amplifier_set(v, i));
  for (SetIndex s = 0; s < out.family.num_sets(); ++s) {
    const int v = out.set_vertex[s];
    switch (out.set_group[s]) {
      case SetGroup::kColorChoice:
      case SetGroup::kColorTail:
        if (in_k[v]) f1.push_back(s);
        break;
      case SetGroup::kVertexStart:
        if (!in_k[v]) f1.push_back(s);
        break;
      case SetGroup::kEdge: {
        // Edge sets are the only ones whose two amplifier leaves belong to
        // different vertices; recover them from the element ids.
        const auto elems = out.family.set(s);
        const int per = 2 * k - 1;
        int a = (elems[0] - 1) / per - 1;
        int b = (elems[1] - 1) / per - 1;
        if (in_k[a] && in_k[b]) f1.push_back(s);
        break;
      }
      default:
        break;
    }
  }
  Packing p = make_packing(out.family, f1);
  if (p.size() * 3 != out.family.n_elements())
    throw Error(ErrorCode::kInternal, "witness packing is not perfect");
  return p;
}

std::vector<int> extract_clique(const ReductionOutput& out,
                                const Packing& packing) {
  std::string reason;
  if (!is_valid_packing(out.family, packing, &reason))
    throw PreconditionError("invalid packing: " + reason);
  if (packing.size() * 3 != out.family.n_elements())
    throw PreconditionError("packing is not perfect");
  std::vector<int> clique;
  for (int v = 0; v < out.padded.graph.num_vertices(); ++v)
    if (packing.contains(out.amplifier_set(v, 1))) clique.push_back(v);
  if (!is_multicolored_clique(out.padded, clique))
    throw VerificationError("extracted vertices do not form a multicolored clique");
  return clique;
}

MulticoloredCliqueInstance read_mcc(std::istream& in) {
  using detail::parse_int;
  detail::LineReader reader(in);
  auto header = reader.next();
  if (!header) throw ParseError(reader.line_number(), "missing header");
  const auto& ht = header->tokens;
  if (ht.size() != 5 || ht[0] != "p" || ht[1] != "mcc")
    throw ParseError(header->number, "expected 'p mcc <n> <m> <k>'");
  const int n = parse_int<int>(ht[2], header->number);
  const int m = parse_int<int>(ht[3], header->number);
  const int k = parse_int<int>(ht[4], header->number);
  if (n < 0 || m < 0 || k < 1)
    throw ParseError(header->number, "header values out of range");

  MulticoloredCliqueInstance inst;
  inst.k = k;
  inst.graph = Graph(n);
  inst.color.assign(n, -1);
  std::set<std::pair<int, int>> edges;
  while (auto line = reader.next()) {
    const auto& t = line->tokens;
    auto vertex = [&](const std::string& tok) {
      int v = parse_int<int>(tok, line->number);
      if (v < 1 || v > n)
        throw ParseError(line->number, "vertex " + tok + " out of range");
      return v - 1;
    };
    if (t[0] == "v" && t.size() == 3) {
      int v = vertex(t[1]);
      int c = parse_int<int>(t[2], line->number);
      if (c < 0 || c >= k) throw ParseError(line->number, "color out of range");
      if (inst.color[v] >= 0)
        throw ParseError(line->number, "vertex colored twice");
      inst.color[v] = c;
    } else if (t[0] == "e" && t.size() == 3) {
      int u = vertex(t[1]);
      int v = vertex(t[2]);
      if (u == v) throw ParseError(line->number, "self-loop");
      if (!edges.insert(std::minmax(u, v)).second)
        throw ParseError(line->number, "repeated edge");
      inst.graph.add_edge(u, v);
    } else {
      throw ParseError(line->number, "expected 'v <id> <color>' or 'e <u> <v>'");
    }
  }
  for (int v = 0; v < n; ++v)
    if (inst.color[v] < 0)
      throw ParseError(reader.line_number(),
                       "vertex " + std::to_string(v + 1) + " has no color");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError(reader.line_number(), "edge count does not match header");
  return inst;
}

void write_mcc(std::ostream& out, const MulticoloredCliqueInstance& inst) {
  const auto edges = inst.graph.edges();
  out << "p mcc " << inst.graph.num_vertices() << ' ' << edges.size() << ' '
      << inst.k << '\n';
  for (int v = 0; v < inst.graph.num_vertices(); ++v)
    out << "v " << v + 1 << ' ' << inst.color[v] << '\n';
  for (auto [u, v] : edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void write_name_map(std::ostream& out, const ReductionOutput& red) {
  for (std::size_t e = 1; e < red.element_names.size(); ++e)
    out << "element " << e << ' ' << red.element_names[e] << '\n';
}

}  // namespace ksp

namespace ksp {

ReductionCheck check_reduction(const MulticoloredCliqueInstance& inst,
                               double exact_budget_seconds, int clique_cap) {
  ReductionCheck rep;
  const auto red = reduce_mcc(inst);
  const auto& pad = red.padded;
  rep.universe = red.family.n_elements();
  rep.sets = red.family.num_sets();
  rep.f0_size = red.f0.size();
  rep.padded_k = pad.k;
  const int limit = 4 * pad.k * pad.k + 8 * pad.k;

  auto fail = [&](const std::string& why) {
    if (rep.failure.empty()) rep.failure = why;
  };

  for_each_multicolored_clique(pad, [&](const std::vector<int>& k) {
    ++rep.cliques;
    auto w = witness_packing(red, k);
    std::vector<SetIndex> diff;
    std::set_symmetric_difference(w.members.begin(), w.members.end(),
                                  red.f0.members.begin(), red.f0.members.end(),
                                  std::back_inserter(diff));
    rep.max_symmetric_difference =
        std::max(rep.max_symmetric_difference, static_cast<int>(diff.size()));
    if (w.size() * 3 == rep.universe && extract_clique(red, w) == k)
      ++rep.witnesses_ok;
    else
      fail("witness for a clique did not round-trip");
    return rep.cliques < clique_cap;
  });
  if (rep.max_symmetric_difference > limit)
    fail("witness differs from f0 in more than 4k^2 + 8k sets");

  Packing best;
  try {
    best = exact_max_packing(red.family, exact_budget_seconds);
    rep.exact_finished = true;
  } catch (const BudgetExceededError& e) {
    best = e.incumbent();
  }
  rep.optimum = best.size();
  rep.perfect = best.size() * 3 == rep.universe;
  if (rep.perfect) {
    try {
      auto k = extract_clique(red, best);
      rep.extraction_ok = is_multicolored_clique(pad, k);
    } catch (const Error&) {
      rep.extraction_ok = false;
    }
    if (!rep.extraction_ok) fail("perfect packing without a clique");
  }
  if (rep.exact_finished && rep.perfect != (rep.cliques > 0))
    fail(rep.perfect ? "perfect packing but no clique"
                     : "clique exists but no perfect packing");
  return rep;
}

}  // namespace ksp
