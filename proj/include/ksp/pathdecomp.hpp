#pragma once

// Path decompositions: validation, conversion to nice form and an exact
// pathwidth oracle for small graphs.

#include <span>
#include <utility>
#include <vector>

#include "ksp/core.hpp"

namespace ksp {

// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  explicit Graph(int n = 0) : adj_(n) {}

  int num_vertices() const noexcept { return static_cast<int>(adj_.size()); }
  // Ignores self-loops and repeated edges.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;
};

struct PathDecomposition {
  std::vector<std::vector<int>> bags;

  // Largest bag size minus one; 0 for decompositions with only empty bags.
  int width() const;
};

enum class BagKind { kFirst, kIntroduce, kForget, kLast };

struct NiceBag {
  BagKind kind;
  int vertex;  // introduced/forgotten vertex; -1 when the bag changes nothing
  std::vector<int> bag;
};

struct NicePathDecomposition {
  std::vector<NiceBag> bags;

  int width() const;
  PathDecomposition plain() const;
};

bool validate_decomposition(const Graph& g, const PathDecomposition& pd);

// Contiguity of every vertex's bag interval; the graph-independent part of
// validity.
bool has_contiguous_occurrences(const PathDecomposition& pd);

// Sweeps consecutive bags, forgetting before introducing. Throws
// PreconditionError when some vertex occurs in a non-contiguous run of bags.
NicePathDecomposition make_nice(const PathDecomposition& pd);

constexpr int kExactPathwidthLimit = 20;

struct PathwidthResult {
  int width = 0;
  PathDecomposition witness;
};

// Dynamic program over vertex subsets using the vertex-separation
// characterization. Throws SizeLimitError above kExactPathwidthLimit vertices.
PathwidthResult exact_pathwidth(const Graph& g);

// Decomposition induced by a vertex order: bag i holds v_i plus every earlier
// vertex that still has a neighbor at position >= i.
PathDecomposition decomposition_from_order(const Graph& g,
                                           std::span<const int> order);

// Subgraph of the conflict graph induced by N[X]. `vertex_sets` receives the
// set index of each graph vertex (ascending).
Graph induced_conflict_subgraph(const ConflictGraph& cg,
                                std::span<const SetIndex> x,
                                std::vector<SetIndex>* vertex_sets);

// Exact pathwidth of the conflict graph induced by N[X].
int swap_pathwidth(const SetFamily& family, const Packing& packing,
                   std::span<const SetIndex> x);

}  // namespace ksp
