#pragma once

// Reduction from Multicolored Clique to 3-Set Packing together with a
// packing F0 of size |U|/3 - 1: the family has a perfect packing iff the
// graph has a multicolored k-clique, and a perfect packing near F0 can be
// built from any such clique.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ksp/core.hpp"
#include "ksp/pathdecomp.hpp"

namespace ksp {

struct MulticoloredCliqueInstance {
  Graph graph;
  int k = 0;
  std::vector<int> color;  // per vertex, in [0, k)
};

void validate(const MulticoloredCliqueInstance& inst);

// Amplifier with symbol prefix: elements prefix_1 .. prefix_{2*4^h - 1} and
// triples {prefix_i, prefix_2i, prefix_2i+1} for 1 <= i < 4^h. Elements are
// returned as names; sets as 1-based positions into that element list.
struct Amplifier {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> sets;
};
Amplifier make_amplifier(const std::string& prefix, int h);

enum class SetGroup {
  kTopAmplifier,
  kVertexAmplifier,
  kVertexStart,   // {v_1, v_1', v_1''}
  kColorChoice,   // {x_{k+c(v)}, v_1', v_1''}
  kEdge,          // {u_{k+c(v)}, v_{k+c(u)}, s_(c(u),c(v))}
  kColorTail,     // {v_{k+c(v)}, l_{2c(v)+1}, l_{2c(v)+2}}
  kTailFill,      // {l_{3i-2}, l_{3i-1}, l_{3i}}
  kPairFill,      // consecutive s-element triples
};

struct ReductionOutput {
  SetFamily family;
  Packing f0;
  std::vector<std::string> element_names;  // indexed by element id, [0] empty
  MulticoloredCliqueInstance padded;       // k raised to 4^h
  int h = 1;
  int original_vertices = 0;
  int original_k = 0;
  std::vector<SetGroup> set_group;   // per set index
  std::vector<int> set_vertex;       // owning vertex for per-vertex groups, else -1
  // Amplifier set {y_i, y_2i, y_2i+1} of amplifier `owner` (-1 = top).
  SetIndex amplifier_set(int owner, int i) const;
  // Element id of y_j in amplifier `owner` (-1 = top).
  ElementId amplifier_element(int owner, int j) const;
};

// Universe size predicted by the construction for a padded instance.
std::int64_t reduction_universe_size(int h, int padded_vertices);

ReductionOutput reduce_mcc(const MulticoloredCliqueInstance& instance);

// Perfect packing built from a multicolored clique. `clique` may list a
// clique of the padded instance or of the original one (then the padding
// vertices are added). Throws PreconditionError if it is not a multicolored
// clique.
Packing witness_packing(const ReductionOutput& out, std::vector<int> clique);

// Reads the clique off a perfect packing: the vertices whose amplifier root
// set {v_1, v_2, v_3} is chosen, in the padded instance. Throws
// PreconditionError for non-perfect packings and VerificationError if the
// result is not a multicolored clique.
std::vector<int> extract_clique(const ReductionOutput& out,
                                const Packing& packing);

bool is_multicolored_clique(const MulticoloredCliqueInstance& inst,
                            const std::vector<int>& vertices);

// Brute force over one vertex per color.
std::optional<std::vector<int>> find_multicolored_clique(
    const MulticoloredCliqueInstance& inst);

// Visits every multicolored clique as an ascending vertex list; stops early
// when `visit` returns false.
void for_each_multicolored_clique(
    const MulticoloredCliqueInstance& inst,
    const std::function<bool(const std::vector<int>&)>& visit);

// Small-scale round trip of the reduction: every multicolored clique (up to
// `clique_cap`) goes through witness_packing and back through
// extract_clique, and the exact solver decides whether a perfect packing
// exists, which must match the presence of a clique.
struct ReductionCheck {
  std::int64_t universe = 0;
  int sets = 0;
  int f0_size = 0;
  int padded_k = 0;
  int cliques = 0;
  int witnesses_ok = 0;
  int max_symmetric_difference = 0;
  bool exact_finished = false;
  int optimum = -1;  // best size found; exact only if exact_finished
  bool perfect = false;
  bool extraction_ok = false;
  std::string failure;  // empty when consistent

  bool consistent() const { return failure.empty(); }
};

ReductionCheck check_reduction(const MulticoloredCliqueInstance& inst,
                               double exact_budget_seconds = 0.0,
                               int clique_cap = 10000);

// Text format: `p mcc <n> <m> <k>`, `v <id> <color>`, `e <u> <v>`; 1-based ids.
MulticoloredCliqueInstance read_mcc(std::istream& in);
void write_mcc(std::ostream& out, const MulticoloredCliqueInstance& inst);

// One `element <id> <name>` line per element.
void write_name_map(std::ostream& out, const ReductionOutput& red);

}  // namespace ksp
