#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ksp/colorcoding.hpp"
#include "ksp/pathdecomp.hpp"
#include "ksp/solvers.hpp"
#include "ksp/swapsearch.hpp"

using namespace ksp;

namespace {

// Checks the witness against the conflict subgraph on N[X].
bool witness_ok(const SetFamily& f, const Packing& p, const ImprovingSet& x,
                int pw) {
  if (!x.witness_bags) return false;
  ConflictGraph cg(f, p);
  std::vector<SetIndex> verts;
  Graph g = induced_conflict_subgraph(cg, x.sets, &verts);
  PathDecomposition pd;
  std::set<SetIndex> seen;
  for (const auto& bag : *x.witness_bags) {
    std::vector<int> b;
    for (SetIndex s : bag) {
      auto it = std::lower_bound(verts.begin(), verts.end(), s);
      if (it == verts.end() || *it != s) return false;
      b.push_back(static_cast<int>(it - verts.begin()));
      seen.insert(s);
    }
    std::sort(b.begin(), b.end());
    pd.bags.push_back(b);
  }
  return validate_decomposition(g, pd) && pd.width() <= pw &&
         seen == std::set<SetIndex>(verts.begin(), verts.end());
}

Coloring constant_coloring(const SetFamily& padded, const Packing& p) {
  Coloring c;
  c.member_color.assign(padded.num_sets(), 0);
  for (SetIndex m : p.members) c.member_color[m] = 1;
  c.element_color.assign(padded.n_elements() + 1, 1);
  return c;
}

}  // namespace

TEST_CASE("pad_to_uniform") {
  SetFamily f(3, 3, {{1, 2}, {3}});
  auto pad = pad_to_uniform(f, 3);
  CHECK(pad.original_elements == 3);
  CHECK(pad.family.n_elements() == 6);
  CHECK(pad.family.sets()[0] == std::vector<ElementId>{1, 2, 4});
  CHECK(pad.family.sets()[1] == std::vector<ElementId>{3, 5, 6});
  CHECK(pad.dummy_owner == std::vector<SetIndex>{0, 1, 1});

  auto same = pad_to_uniform(fixtures::e1(), 3);
  CHECK(same.family == fixtures::e1());
  CHECK(same.dummy_owner.empty());
}

TEST_CASE("trial_count") {
  CHECK(trial_count(2, 3, std::exp(-1.0)) == 1097);
  CHECK(trial_count(2, 3, 0.01) == 5051);
  CHECK(trial_count(2, 3, std::nextafter(1.0, 0.0)) == 1);
  CHECK_THROWS_AS(trial_count(1, 3, 0.01), PreconditionError);
  CHECK_THROWS_AS(trial_count(2, 3, 1.0), PreconditionError);
  CHECK_THROWS_AS(trial_count(2, 3, 0.0), PreconditionError);
}

TEST_CASE("search_with_coloring on E1") {
  auto f = fixtures::e1();
  auto p = make_packing(f, {0});
  Coloring c = constant_coloring(f, p);
  // S1 and S2 cover {1,2,4,5,6,7}: six distinct colors out of r*k = 6.
  c.element_color = {0, 1, 2, 3, 3, 4, 5, 6};
  auto hit = search_with_coloring(f, p, c, 2, 2);
  REQUIRE(hit);
  CHECK((hit->sets == std::vector<SetIndex>{3} ||
         hit->sets == std::vector<SetIndex>{1, 2}));
  CHECK(witness_ok(f, p, *hit, 2));

  // S3 is a subset of S1 u S2, so a clash inside S3 also spoils the pair.
  // Elements 4 and 6 share a color: neither swap is colorful.
  c.element_color = {0, 1, 2, 3, 4, 5, 4, 6};
  CHECK_FALSE(search_with_coloring(f, p, c, 2, 2));

  // Elements 1 and 2 share a color: only S3 remains colorful.
  c.element_color = {0, 1, 1, 2, 3, 4, 5, 6};
  hit = search_with_coloring(f, p, c, 2, 2);
  REQUIRE(hit);
  CHECK(hit->sets == std::vector<SetIndex>{3});

  SetFamily ragged(3, 3, {{1, 2}});
  CHECK_THROWS_AS(search_with_coloring(ragged, Packing{}, c, 2, 1),
                  PreconditionError);
  Coloring partial = c;
  partial.element_color.pop_back();
  CHECK_THROWS_AS(search_with_coloring(f, p, partial, 2, 2), PreconditionError);
}

TEST_CASE("optimal packings are never improved") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    auto f = fixtures::random_family(rng, 9, 8, 3, true);
    auto opt = exact_max_packing(f);
    SearchParams params;
    params.r = 2 + rep % 2;
    params.pw = 2;
    params.trials = 200;
    params.seed = rep;
    CHECK_FALSE(find_improving_set(f, opt, params));
  }
}

TEST_CASE("r = 1 scans directly") {
  auto f = fixtures::e1();
  SearchParams params;
  params.r = 1;
  SearchStats stats;
  auto hit = find_improving_set(f, make_packing(f, {0}), params, &stats);
  REQUIRE(hit);
  CHECK(hit->sets == std::vector<SetIndex>{3});
  CHECK(stats.trials_run == 0);
}

TEST_CASE("driver finds a swap on E1 across seeds") {
  auto f = fixtures::e1();
  auto p = make_packing(f, {0});
  int found = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SearchParams params;
    params.r = 2;
    params.pw = 2;
    params.seed = seed;
    auto hit = find_improving_set(f, p, params);
    if (hit) {
      ++found;
      CHECK(is_improving_set(f, p, hit->sets));
    }
  }
  CHECK(found >= 198);  // 99% of 200
}

TEST_CASE("driver is deterministic in the seed") {
  std::mt19937_64 rng(22);
  auto f = fixtures::random_family(rng, 10, 9, 3, true);
  SetFamily g(10, 3, f.sets());
  Packing start = greedy_maximal(f);
  SearchParams params;
  params.r = 3;
  params.pw = 2;
  params.trials = 300;
  params.seed = 99;
  SearchStats a, b;
  auto x = find_improving_set(f, start, params, &a);
  auto y = find_improving_set(g, start, params, &b);
  CHECK(x.has_value() == y.has_value());
  if (x) CHECK(x->sets == y->sets);
  CHECK(a.successful_trial == b.successful_trial);
  CHECK(random_coloring(f, start, 3, 5, 7).element_color ==
        random_coloring(f, start, 3, 5, 7).element_color);
  CHECK(random_coloring(f, start, 3, 5, 7).element_color !=
        random_coloring(f, start, 3, 5, 8).element_color);
}

TEST_CASE("completeness under injective colorings and soundness") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int rep = 0; rep < 120; ++rep) {
    auto base = fixtures::random_family(rng, 10, 4 + rng() % 7, 3);
    auto padded = pad_to_uniform(base, 3);
    const auto& f = padded.family;
    std::vector<SetIndex> chosen;
    for (int s = 0; s < f.num_sets(); ++s) {
      bool ok = rng() % 2;
      for (int c : chosen)
        if (!fixtures::disjoint(f.sets()[s], f.sets()[c])) ok = false;
      if (ok) chosen.push_back(s);
    }
    auto p = make_packing(f, chosen);
    const int r = 2 + static_cast<int>(rng() % 2);
    for (const auto& x : enumerate_improving_sets(f, p, r)) {
      const int width = swap_pathwidth(f, p, x.sets);
      for (int pw = width; pw <= 2; ++pw) {
        // Random coloring, then forced injective on N(X) and on the elements
        // of X.
        Coloring c = random_coloring(f, p, r, rng(), 0);
        int color = 1;
        for (SetIndex m : x.removed) c.member_color[m] = color++;
        color = 1;
        for (SetIndex s : x.sets)
          for (ElementId e : f.set(s)) c.element_color[e] = color++;
        auto hit = search_with_coloring(f, p, c, r, pw);
        REQUIRE(hit);
        CHECK(is_improving_set(f, p, hit->sets));
        CHECK(static_cast<int>(hit->sets.size()) <= r);
        CHECK(witness_ok(f, p, *hit, pw));
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}
