#pragma once

// Color-coding search for improving sets of bounded size and bounded
// pathwidth.
//
// A trial fixes two colorings: members of the packing get colors in [1, r-1]
// and universe elements get colors in [1, r*k]. Under a fixed coloring the
// search explores states (used member colors, used element colors, current
// bag) where consecutive states differ by introducing or forgetting one set,
// so an accepting walk spells out a nice path decomposition of N[X]. Element
// colors double as a counter for |X| because every set is padded to exactly
// k elements. Repeating the trial with fresh uniform colorings makes a miss
// unlikely.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "ksp/core.hpp"

namespace ksp {

// Family whose sets were all padded to exactly k elements with fresh dummy
// elements numbered after the original universe.
struct PaddedFamily {
  SetFamily family;
  int original_elements = 0;
  // dummy_owner[d - original_elements - 1] is the set that received dummy d.
  std::vector<SetIndex> dummy_owner;
};

PaddedFamily pad_to_uniform(const SetFamily& family, int k);

struct Coloring {
  // Indexed by set index; members map to [1, r-1], non-members hold 0.
  std::vector<int> member_color;
  // Indexed by element id (slot 0 unused); every element maps to [1, r*k].
  std::vector<int> element_color;
};

struct SearchStats {
  std::int64_t trials_run = 0;
  std::int64_t states_visited = 0;  // summed over trials
  std::int64_t successful_trial = -1;
  bool deadline_hit = false;
};

// Decides reachability of an accepting state under one coloring. Returns an
// improving set of size <= r whose witness_bags form a path decomposition of
// N[X] with width <= pw, or nullopt when no improving set that is colorful
// under `coloring` exists. The result is re-verified before returning.
// Throws PreconditionError if `family` is not k-uniform (k = family.k()) or
// the coloring is not total over its domains or out of range.
std::optional<ImprovingSet> search_with_coloring(const SetFamily& family,
                                                 const Packing& packing,
                                                 const Coloring& coloring,
                                                 int r, int pw,
                                                 SearchStats* stats = nullptr);

// ceil(e^(r-1+rk) * ln(1/failure_prob)), at least 1, saturating at INT64_MAX.
// Throws PreconditionError for r < 2 (size-1 swaps are found by a direct scan)
// or failure_prob outside (0, 1).
std::int64_t trial_count(int r, int k, double failure_prob);

struct SearchParams {
  int r = 2;
  int pw = 1;
  // 0 means trial_count(r, k, failure_prob).
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double failure_prob = 0.01;
  // Trials stop (reporting no result) once this passes.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

void validate(const SearchParams& params);

// Uniform coloring drawn from the stream determined by (seed, trial).
Coloring random_coloring(const SetFamily& padded, const Packing& packing,
                         int r, std::uint64_t seed, std::int64_t trial);

// Runs independent coloring trials in order and returns the first success.
// For r = 1 scans for a non-member disjoint from every member instead.
std::optional<ImprovingSet> find_improving_set(const SetFamily& family,
                                               const Packing& packing,
                                               const SearchParams& params,
                                               SearchStats* stats = nullptr);

}  // namespace ksp
