#pragma once

// Set-packing instance files, certificates, swap traces and generators.
//
// Instance format (1-based elements):
//   p sp <n_elements> <n_sets> <k>
//   s <e1> <e2> ...        one line per set, in index order
// Lines starting with `c` are comments.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ksp/core.hpp"

namespace ksp {

// Throws ParseError (with line number) on a malformed header, element ids out
// of range, repeated elements, oversized sets, duplicate sets or a set count
// that disagrees with the header.
SetFamily read_instance(std::istream& in);
void write_instance(std::ostream& out, const SetFamily& family,
                    const std::vector<std::string>& comments = {});

// n_sets distinct sets of exactly k elements; each set draws k elements
// without replacement. Throws PreconditionError when infeasible.
SetFamily gen_random(int n_elements, int n_sets, int k, std::uint64_t seed);

struct PlantedInstance {
  SetFamily family;
  int planted = 0;  // size of the planted perfect matching
};

// Blocks X = 1..m, Y = m+1..2m, Z = 2m+1..3m. The planted triples
// (i, m+i, 2m+i) come first, then `noise` further distinct triples.
PlantedInstance gen_planted_3dm(int m, int noise, std::uint64_t seed);

// Certificate: one 1-based set index per line.
Packing read_certificate(std::istream& in, const SetFamily& family);
void write_certificate(std::ostream& out, const Packing& packing);

// Trace, 1-based set indices:
//   start <idx...>
//   swap add <idx...> remove <idx...>
struct Trace {
  Packing start;
  std::vector<ImprovingSet> swaps;
};
Trace read_trace(std::istream& in, const SetFamily& family);
void write_trace(std::ostream& out, const Trace& trace);

}  // namespace ksp
