#pragma once

// Small trees with two extra edges in labeled multigraphs of minimum
// degree 3, with certificates and the derived path decomposition.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ksp/pathdecomp.hpp"

namespace ksp {

struct LabeledEdge {
  int u = 0;
  int v = 0;
  std::vector<int> labels;  // ascending symbol ids

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// Multigraph on vertices 0..n-1; edge ids are positions in `edges`.
struct LabeledMultigraph {
  int n = 0;
  int gamma = 1;
  std::vector<LabeledEdge> edges;

  friend bool operator==(const LabeledMultigraph&,
                         const LabeledMultigraph&) = default;
};

// Throws PreconditionError on self-loops, bad endpoints, unsorted labels,
// label sets larger than gamma, symbols on more than gamma edges, gamma < 1,
// or (when required) a vertex of degree below 3.
void validate(const LabeledMultigraph& h, bool require_min_degree_3 = true);

// ceil(log_{3/2}(12 gamma^2)).
int beta(int gamma);

// |V0| limit: 4 (log_{3/2} n + 2).
double tree_vertex_limit(int n);

struct TreeCertificate {
  int root = -1;
  std::vector<int> vertices;    // V0, ascending
  std::vector<int> tree_edges;  // E0 edge ids, ascending
  int e1 = -1;
  int e2 = -1;
};

// Follows the constructive argument: parallel-edge corner cases first, then
// a breadth-first tree whose layer j holds exactly floor(2 (3/2)^j) vertices
// and avoids edges whose labels meet labels more than beta levels up. When
// growth stalls, two excess edges among the last layer's edges close the
// certificate. Throws PreconditionError if `h` is invalid and Error(kInternal)
// with a diagnostic if the stall analysis finds no witness.
TreeCertificate find_bounded_tree(const LabeledMultigraph& h);

// Checks: T0 is a subtree of h rooted at root; |V0| within
// tree_vertex_limit(n); e1 != e2 lie outside E0 with endpoints in V0; at most
// 4 leaves; tree edges sharing a symbol are within beta(gamma) levels of each
// other. `reason` receives the first failed check.
bool verify_tree_certificate(const LabeledMultigraph& h,
                             const TreeCertificate& cert,
                             std::string* reason = nullptr);

struct DecomposedSubgraph {
  TreeCertificate certificate;
  std::vector<int> vertices;  // V0
  std::vector<int> edges;     // E0 plus e1, e2
  PathDecomposition decomposition;  // bags over original vertex ids
  int width_limit = 0;              // 4 (beta + 3)
};

// Tree certificate plus the layered decomposition: bag i holds the tree
// layers max(0, i-beta-1)..i and the endpoints of e1 and e2.
DecomposedSubgraph build_decomposed_subgraph(const LabeledMultigraph& h);

struct DecompositionReport {
  bool edge_count = false;     // |E0| = |V0| + 1
  bool vertex_bound = false;   // |V0| <= 4 (log_{3/2} n + 2)
  bool label_bags = false;     // label-sharing edges share a bag
  bool edge_intervals = false; // bags holding both ends form an interval
  bool valid = false;          // path decomposition of H0
  bool width_ok = false;       // width <= 4 (beta + 3)
  bool all() const {
    return edge_count && vertex_bound && label_bags && edge_intervals &&
           valid && width_ok;
  }
};

DecompositionReport check_decomposed_subgraph(const LabeledMultigraph& h,
                                              const DecomposedSubgraph& d);

// Random multigraph with every degree in {3, 4} (configuration model, no
// self-loops) and labels drawn so that both gamma bounds hold.
LabeledMultigraph random_labeled_multigraph(int n, int gamma,
                                            std::uint64_t seed);

// Text format: `p mgraph <n> <m> <gamma>` then m lines `e <u> <v> <symbols>`
// with 1-based vertices; `c` lines are comments.
LabeledMultigraph read_multigraph(std::istream& in);
void write_multigraph(std::ostream& out, const LabeledMultigraph& h);

// Text format with 1-based vertex and edge ids:
//   root <v> / vertices <v...> / tree <edge ids...> / extra <e1> <e2>
TreeCertificate read_tree_certificate(std::istream& in);
void write_tree_certificate(std::ostream& out, const TreeCertificate& cert);

}  // namespace ksp
