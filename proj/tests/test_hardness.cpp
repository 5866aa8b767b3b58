#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "ksp/hardness.hpp"
#include "ksp/solvers.hpp"

using namespace ksp;

namespace {

MulticoloredCliqueInstance colored(int n, int k, std::vector<int> colors,
                                   std::vector<std::pair<int, int>> edges) {
  MulticoloredCliqueInstance inst;
  inst.k = k;
  inst.graph = Graph(n);
  inst.color = std::move(colors);
  for (auto [u, v] : edges) inst.graph.add_edge(u, v);
  return inst;
}

MulticoloredCliqueInstance k4(bool drop_01 = false) {
  std::vector<std::pair<int, int>> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  if (drop_01) e.erase(e.begin());
  return colored(4, 4, {0, 1, 2, 3}, e);
}

ElementId id_of(const ReductionOutput& r, const std::string& name) {
  for (std::size_t e = 1; e < r.element_names.size(); ++e)
    if (r.element_names[e] == name) return static_cast<ElementId>(e);
  return -1;
}

std::vector<ElementId> uncovered(const ReductionOutput& r, const Packing& p) {
  std::vector<char> cov(r.family.n_elements() + 1, 0);
  for (SetIndex s : p.members)
    for (ElementId e : r.family.set(s)) cov[e] = 1;
  std::vector<ElementId> out;
  for (ElementId e = 1; e <= r.family.n_elements(); ++e)
    if (!cov[e]) out.push_back(e);
  return out;
}

int symmetric_difference(const Packing& a, const Packing& b) {
  std::vector<SetIndex> d;
  std::set_symmetric_difference(a.members.begin(), a.members.end(),
                                b.members.begin(), b.members.end(),
                                std::back_inserter(d));
  return static_cast<int>(d.size());
}

}  // namespace

TEST_CASE("amplifier") {
  auto a = make_amplifier("x", 1);
  CHECK(a.elements.size() == 7);
  CHECK(a.elements.front() == "x_1");
  CHECK(a.elements.back() == "x_7");
  CHECK(a.sets == std::vector<std::vector<int>>{{1, 2, 3}, {2, 4, 5}, {3, 6, 7}});
  auto b = make_amplifier("y", 2);
  CHECK(b.elements.size() == 31);
  CHECK(b.sets.size() == 15);
  CHECK_THROWS_AS(make_amplifier("x", 0), PreconditionError);
}

TEST_CASE("divisibility facts for k = 4^h") {
  for (int h = 1; h <= 6; ++h) {
    const long long k = 1LL << (2 * h);
    CHECK((2 * k) % 3 == 2);
    CHECK((k * (k - 1) / 2) % 3 == 0);
  }
}

TEST_CASE("K4 reduction counts") {
  auto r = reduce_mcc(k4());
  CHECK(r.h == 1);
  CHECK(r.family.n_elements() == 57);
  CHECK(r.family.num_sets() == 37);
  CHECK(r.f0.size() == 18);
  CHECK(r.family.k() == 3);
  auto miss = uncovered(r, r.f0);
  std::vector<ElementId> expect{id_of(r, "x_1"), id_of(r, "l_7"), id_of(r, "l_8")};
  std::sort(expect.begin(), expect.end());
  CHECK(miss == expect);
  CHECK(reduction_universe_size(1, 4) == 57);

  auto minus = reduce_mcc(k4(true));
  CHECK(minus.family.num_sets() == 36);
  CHECK(minus.f0.size() == 18);
}

TEST_CASE("K4 witness and extraction") {
  auto r = reduce_mcc(k4());
  auto w = witness_packing(r, {0, 1, 2, 3});
  CHECK(w.size() == 19);
  CHECK(uncovered(r, w).empty());
  CHECK(symmetric_difference(w, r.f0) == 37);
  std::vector<ElementId> top{id_of(r, "x_1"), id_of(r, "x_2"), id_of(r, "x_3")};
  bool has_top = false;
  for (SetIndex s : w.members)
    if (std::vector<ElementId>(r.family.set(s).begin(), r.family.set(s).end()) == top)
      has_top = true;
  CHECK(has_top);
  CHECK(extract_clique(r, w) == std::vector<int>{0, 1, 2, 3});

  auto opt = exact_max_packing(r.family);
  CHECK(opt.size() == 19);
  CHECK(extract_clique(r, opt) == std::vector<int>{0, 1, 2, 3});

  CHECK_THROWS_AS(extract_clique(r, r.f0), PreconditionError);
  CHECK_THROWS_AS(witness_packing(r, {0, 1, 2}), PreconditionError);

  auto minus = reduce_mcc(k4(true));
  CHECK(exact_max_packing(minus.family).size() <= 18);
  CHECK_THROWS_AS(witness_packing(minus, {0, 1, 2, 3}), PreconditionError);
}

TEST_CASE("padding to a power of four") {
  // Triangle with k = 3: one universal vertex brings k to 4.
  auto tri = colored(3, 3, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
  auto r = reduce_mcc(tri);
  CHECK(r.padded.k == 4);
  CHECK(r.padded.graph.num_vertices() == 4);
  CHECK(r.padded.color[3] == 3);
  CHECK(r.family.n_elements() == reduction_universe_size(1, 4));
  auto w = witness_packing(r, {0, 1, 2});
  CHECK(w.size() * 3 == r.family.n_elements());
  CHECK(extract_clique(r, w) == std::vector<int>{0, 1, 2, 3});

  auto five = colored(5, 5, {0, 1, 2, 3, 4}, {});
  auto r5 = reduce_mcc(five);
  CHECK(r5.h == 2);
  CHECK(r5.padded.k == 16);
  CHECK(r5.padded.graph.num_vertices() == 16);
  CHECK(r5.family.n_elements() == reduction_universe_size(2, 16));
}

TEST_CASE("round trip over every multicolored clique of small graphs") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 5);
    std::vector<int> colors(n);
    for (int v = 0; v < 4; ++v) colors[v] = v;
    for (int v = 4; v < n; ++v) colors[v] = static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 4 != 0) edges.push_back({u, v});
    auto inst = colored(n, 4, colors, edges);
    auto r = reduce_mcc(inst);
    CHECK(r.family.n_elements() == reduction_universe_size(1, n));
    CHECK(r.f0.size() * 3 == r.family.n_elements() - 3);
    // Every choice of one vertex per color.
    std::vector<std::vector<int>> by(4);
    for (int v = 0; v < n; ++v) by[colors[v]].push_back(v);
    for (int a : by[0])
      for (int b : by[1])
        for (int c : by[2])
          for (int d : by[3]) {
            std::vector<int> k{a, b, c, d};
            std::sort(k.begin(), k.end());
            if (!is_multicolored_clique(inst, k)) continue;
            auto w = witness_packing(r, k);
            CHECK(extract_clique(r, w) == k);
            CHECK(symmetric_difference(w, r.f0) <= 4 * 16 + 8 * 4);
          }
  }
}

TEST_CASE("mcc text format") {
  auto inst = k4(true);
  std::stringstream ss;
  write_mcc(ss, inst);
  CHECK(ss.str() ==
        "p mcc 4 5 4\nv 1 0\nv 2 1\nv 3 2\nv 4 3\n"
        "e 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
  auto back = read_mcc(ss);
  CHECK(back.k == 4);
  CHECK(back.color == inst.color);
  CHECK(back.graph.edges() == inst.graph.edges());

  std::stringstream bad("p mcc 2 1 2\nv 1 0\nv 2 5\ne 1 2\n");
  CHECK_THROWS_AS(read_mcc(bad), ParseError);
  std::stringstream uncolored("p mcc 2 0 2\nv 1 0\n");
  CHECK_THROWS_AS(read_mcc(uncolored), ParseError);
}

TEST_CASE("name map lists every element once") {
  auto r = reduce_mcc(k4());
  std::stringstream ss;
  write_name_map(ss, r);
  std::string line;
  int count = 0;
  std::set<std::string> names;
  while (std::getline(ss, line)) {
    ++count;
    names.insert(line.substr(line.rfind(' ') + 1));
  }
  CHECK(count == 57);
  CHECK(names.size() == 57);
  CHECK(names.count("s_(0,1)"));
  CHECK(names.count("v4_1''"));
}

TEST_CASE("reduction check on K4 and K4 minus an edge") {
  auto full = check_reduction(k4());
  CHECK(full.consistent());
  CHECK(full.cliques == 1);
  CHECK(full.witnesses_ok == 1);
  CHECK(full.exact_finished);
  CHECK(full.optimum == 19);
  CHECK(full.perfect);
  CHECK(full.extraction_ok);
  CHECK(full.max_symmetric_difference == 37);

  auto minus = check_reduction(k4(true));
  CHECK(minus.consistent());
  CHECK(minus.cliques == 0);
  CHECK(minus.optimum == 18);
  CHECK_FALSE(minus.perfect);
}

TEST_CASE("perfect packing iff multicolored clique on small random graphs") {
  std::mt19937_64 rng(43);
  int with = 0, without = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 3);
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = v < 4 ? v : static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 5 != 0) edges.push_back({u, v});
    auto inst = colored(n, 4, colors, edges);
    auto c = check_reduction(inst);
    CHECK(c.consistent());
    REQUIRE(c.exact_finished);
    CHECK(c.perfect == find_multicolored_clique(inst).has_value());
    (c.perfect ? with : without)++;
  }
  CHECK(with > 0);
  CHECK(without > 0);
}
