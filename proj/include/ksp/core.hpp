#pragma once

// Instance and solution representation for k-Set Packing: the set family,
// packings, the bipartite conflict graph and improving-set semantics.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksp/error.hpp"

namespace ksp {

using SetIndex = int;
using ElementId = int;

// Immutable family of distinct sets over the universe {1..n_elements}.
// Every set is strictly increasing and has between 1 and k elements.
class SetFamily {
 public:
  SetFamily() = default;

  // Validates the invariants and throws PreconditionError on violation.
  SetFamily(int n_elements, int k, std::vector<std::vector<ElementId>> sets);

  int n_elements() const noexcept { return n_elements_; }
  int k() const noexcept { return k_; }
  int num_sets() const noexcept { return static_cast<int>(sets_.size()); }

  std::span<const ElementId> set(SetIndex i) const { return sets_.at(i); }
  const std::vector<std::vector<ElementId>>& sets() const noexcept {
    return sets_;
  }
  // Sets containing element e, ascending.
  std::span<const SetIndex> sets_containing(ElementId e) const {
    return incidence_.at(e);
  }

  bool intersects(SetIndex a, SetIndex b) const;

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.n_elements_ == b.n_elements_ && a.k_ == b.k_ &&
           a.sets_ == b.sets_;
  }

 private:
  int n_elements_ = 0;
  int k_ = 0;
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::vector<SetIndex>> incidence_;  // indexed by element id
};

// A disjoint subfamily, stored as ascending set indices.
struct Packing {
  std::vector<SetIndex> members;

  int size() const noexcept { return static_cast<int>(members.size()); }
  bool contains(SetIndex s) const;
  friend bool operator==(const Packing&, const Packing&) = default;
};

// Throws PreconditionError unless `members` (any order) references distinct,
// in-range, pairwise disjoint sets. Returns the normalized packing.
Packing make_packing(const SetFamily& family, std::vector<SetIndex> members);

// Non-throwing check; on failure `reason` (if given) receives a message.
bool is_valid_packing(const SetFamily& family, const Packing& packing,
                      std::string* reason = nullptr);

// Bipartite intersection graph between packing members (left) and
// non-members (right).
class ConflictGraph {
 public:
  ConflictGraph(const SetFamily& family, const Packing& packing);

  const std::vector<SetIndex>& left() const noexcept { return left_; }
  const std::vector<SetIndex>& right() const noexcept { return right_; }

  bool is_member(SetIndex s) const { return member_.at(s); }
  int num_sets() const noexcept { return static_cast<int>(member_.size()); }

  // Members intersecting non-member s, ascending. Throws if s is a member.
  const std::vector<SetIndex>& member_neighbors(SetIndex s) const;
  // Non-members intersecting member m, ascending. Throws if m is a non-member.
  const std::vector<SetIndex>& nonmember_neighbors(SetIndex m) const;
  // Neighbors of any vertex regardless of side.
  const std::vector<SetIndex>& neighbors(SetIndex s) const {
    return adj_.at(s);
  }

  std::size_t num_edges() const noexcept { return num_edges_; }

 private:
  std::vector<bool> member_;
  std::vector<SetIndex> left_;
  std::vector<SetIndex> right_;
  std::vector<std::vector<SetIndex>> adj_;
  std::size_t num_edges_ = 0;
};

struct ImprovingSet {
  std::vector<SetIndex> sets;     // X, ascending non-member indices
  std::vector<SetIndex> removed;  // N(X), ascending member indices
  // Bags over set indices covering exactly N[X], when the producer has one.
  std::optional<std::vector<std::vector<SetIndex>>> witness_bags;
};

ConflictGraph build_conflict_graph(const SetFamily& family,
                                   const Packing& packing);

// Open neighborhood N(X) of non-member indices X. Throws PreconditionError if
// some index is not on the right side.
std::vector<SetIndex> neighborhood(const ConflictGraph& cg,
                                   std::span<const SetIndex> x);

bool is_improving_set(const SetFamily& family, const Packing& packing,
                      std::span<const SetIndex> x);

// Builds the ImprovingSet record for X (computing N(X)); throws
// PreconditionError if X is not improving.
ImprovingSet make_improving_set(const SetFamily& family,
                                const Packing& packing,
                                std::vector<SetIndex> x);

// (packing \ N(X)) ∪ X. Throws PreconditionError when X is not an improving
// set for `packing` or its recorded neighborhood is wrong.
Packing apply_swap(const SetFamily& family, const Packing& packing,
                   const ImprovingSet& x);

// True iff no two of the given sets share an element.
bool pairwise_disjoint(const SetFamily& family, std::span<const SetIndex> sets);

}  // namespace ksp
