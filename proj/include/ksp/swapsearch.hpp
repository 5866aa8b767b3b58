#pragma once

// Exhaustive improving-set search over bounded-size swaps.

#include <functional>
#include <optional>
#include <vector>

#include "ksp/core.hpp"

namespace ksp {

// Calls `visit` for every improving set X with |X| <= r, ordered by |X| and
// then lexicographically by ascending set indices. Stops early when `visit`
// returns false. Only pairwise-disjoint partial selections are extended.
void for_each_improving_set(const SetFamily& family, const Packing& packing,
                            int r,
                            const std::function<bool(const ImprovingSet&)>& visit);

std::vector<ImprovingSet> enumerate_improving_sets(const SetFamily& family,
                                                   const Packing& packing,
                                                   int r);

// First improving set of size <= r in enumeration order.
std::optional<ImprovingSet> find_first_improving_set(const SetFamily& family,
                                                     const Packing& packing,
                                                     int r);

// First improving set of size <= r whose N[X] has pathwidth <= pw, with an
// optimal path decomposition of N[X] attached.
std::optional<ImprovingSet> bruteforce_find_pw(const SetFamily& family,
                                               const Packing& packing, int r,
                                               int pw);

}  // namespace ksp
