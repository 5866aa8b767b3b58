#include <doctest.h>

#include "fixtures.hpp"
#include "ksp/pathdecomp.hpp"

using namespace ksp;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

bool is_nice(const NicePathDecomposition& nice) {
  const auto& b = nice.bags;
  if (b.size() < 2 || !b.front().bag.empty() || !b.back().bag.empty())
    return false;
  for (std::size_t i = 1; i + 1 < b.size(); ++i) {
    const auto& prev = b[i - 1].bag;
    const auto& cur = b[i].bag;
    std::vector<int> diff;
    if (b[i].kind == BagKind::kIntroduce) {
      if (cur.size() != prev.size() + 1) return false;
      std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(),
                          std::back_inserter(diff));
    } else if (b[i].kind == BagKind::kForget) {
      if (prev.size() != cur.size() + 1) return false;
      std::set_difference(prev.begin(), prev.end(), cur.begin(), cur.end(),
                          std::back_inserter(diff));
    } else {
      return false;
    }
    if (diff != std::vector<int>{b[i].vertex}) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validate_decomposition examples") {
  Graph edge(2);
  edge.add_edge(0, 1);
  CHECK(validate_decomposition(edge, {{{0, 1}}}));
  CHECK_FALSE(validate_decomposition(edge, {{{0}, {1}}}));
  Graph tri = complete(3);
  CHECK_FALSE(validate_decomposition(tri, {{{0, 1}, {1, 2}, {0, 2}}}));
  // Vertex missing from every bag.
  CHECK_FALSE(validate_decomposition(Graph(2), {{{0}}}));
}

TEST_CASE("make_nice examples") {
  auto nice = make_nice({{{0, 1}}});
  REQUIRE(nice.bags.size() == 5);
  std::vector<std::vector<int>> expect{{}, {0}, {0, 1}, {1}, {}};
  for (int i = 0; i < 5; ++i) CHECK(nice.bags[i].bag == expect[i]);
  CHECK(nice.bags.front().kind == BagKind::kFirst);
  CHECK(nice.bags.back().kind == BagKind::kLast);
  CHECK(nice.width() == 1);

  auto empty = make_nice({{{}}});
  REQUIRE(empty.bags.size() == 2);
  CHECK(empty.bags[0].bag.empty());
  CHECK(empty.bags[1].bag.empty());

  Graph abc = path(3);
  auto p = make_nice({{{0, 1}, {1, 2}}});
  CHECK(validate_decomposition(abc, p.plain()));
  CHECK(p.width() == 1);
  CHECK(is_nice(p));

  CHECK_THROWS_AS(make_nice({{{0}, {1}, {0}}}), PreconditionError);
}

TEST_CASE("exact_pathwidth examples") {
  CHECK(exact_pathwidth(path(5)).width == 1);
  CHECK(exact_pathwidth(complete(4)).width == 3);
  CHECK(exact_pathwidth(Graph(1)).width == 0);
  auto empty = exact_pathwidth(Graph(0));
  CHECK(empty.width == 0);
  CHECK(empty.witness.bags.size() == 1);
  CHECK_THROWS_AS(exact_pathwidth(Graph(kExactPathwidthLimit + 1)),
                  SizeLimitError);
}

TEST_CASE("exact_pathwidth agrees with brute force over vertex orders") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 7);
    Graph g(n);
    const int density = 1 + static_cast<int>(rng() % 4);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (static_cast<int>(rng() % 5) < density) g.add_edge(u, v);
    auto res = exact_pathwidth(g);
    CHECK(res.width == fixtures::brute_pathwidth(g));
    CHECK(res.width <= std::max(0, n - 1));
    CHECK(validate_decomposition(g, res.witness));
    CHECK(res.witness.width() == res.width);

    auto nice = make_nice(res.witness);
    CHECK(validate_decomposition(g, nice.plain()));
    CHECK(nice.width() <= res.witness.width());
    CHECK(is_nice(nice));
  }
  for (int n = 2; n <= 8; ++n) CHECK(exact_pathwidth(complete(n)).width == n - 1);
}

TEST_CASE("swap_pathwidth examples") {
  auto f = fixtures::e1();
  auto p = make_packing(f, {0});
  std::vector<SetIndex> x12{1, 2}, x3{3}, x1{1};
  CHECK(swap_pathwidth(f, p, x12) == 1);
  CHECK(swap_pathwidth(f, p, x3) == 0);
  CHECK(swap_pathwidth(f, p, x1) == 1);
}
