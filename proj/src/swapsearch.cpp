#include "ksp/swapsearch.hpp"

#include <algorithm>

#include "ksp/pathdecomp.hpp"

namespace ksp {

namespace {

class Enumerator {
 public:
  Enumerator(const SetFamily& family, const Packing& packing,
             const std::function<bool(const ImprovingSet&)>& visit)
      : family_(family),
        cg_(family, packing),
        visit_(visit),
        used_(static_cast<std::size_t>(family.n_elements()) + 1, 0),
        member_hits_(static_cast<std::size_t>(family.num_sets()), 0) {}

  // Returns false once the visitor asked to stop.
  bool run(int size) {
    target_ = size;
    return extend(0);
  }

 private:
  bool extend(std::size_t from) {
    const auto& right = cg_.right();
    if (static_cast<int>(chosen_.size()) == target_) {
      ImprovingSet x;
      x.sets = chosen_;
      x.removed = neighborhood(cg_, chosen_);
      return visit_(x);
    }
    const int remaining = target_ - static_cast<int>(chosen_.size());
    for (std::size_t i = from; i + remaining <= right.size(); ++i) {
      SetIndex s = right[i];
      auto elems = family_.set(s);
      if (std::any_of(elems.begin(), elems.end(),
                      [&](ElementId e) { return used_[e] != 0; }))
        continue;
      int added = 0;
      for (SetIndex m : cg_.member_neighbors(s))
        if (member_hits_[m]++ == 0) ++added;
      removed_count_ += added;
      for (ElementId e : elems) used_[e] = 1;
      chosen_.push_back(s);
      // |N(X)| only grows; a final set of size target_ needs |N| < target_.
      bool keep_going = true;
      if (removed_count_ < target_) keep_going = extend(i + 1);
      chosen_.pop_back();
      for (ElementId e : elems) used_[e] = 0;
      for (SetIndex m : cg_.member_neighbors(s)) --member_hits_[m];
      removed_count_ -= added;
      if (!keep_going) return false;
    }
    return true;
  }

  const SetFamily& family_;
  ConflictGraph cg_;
  const std::function<bool(const ImprovingSet&)>& visit_;
  std::vector<char> used_;
  std::vector<int> member_hits_;
  std::vector<SetIndex> chosen_;
  int removed_count_ = 0;
  int target_ = 0;
};

}  // namespace

void for_each_improving_set(
    const SetFamily& family, const Packing& packing, int r,
    const std::function<bool(const ImprovingSet&)>& visit) {
  if (r < 1) throw PreconditionError("swap size bound r must be at least 1");
  Enumerator en(family, packing, visit);
  const int cap = std::min<int>(r, family.num_sets() - packing.size());
  for (int size = 1; size <= cap; ++size)
    if (!en.run(size)) return;
}

std::vector<ImprovingSet> enumerate_improving_sets(const SetFamily& family,
                                                   const Packing& packing,
                                                   int r) {
  std::vector<ImprovingSet> out;
  for_each_improving_set(family, packing, r, [&](const ImprovingSet& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

std::optional<ImprovingSet> find_first_improving_set(const SetFamily& family,
                                                     const Packing& packing,
                                                     int r) {
  std::optional<ImprovingSet> hit;
  for_each_improving_set(family, packing, r, [&](const ImprovingSet& x) {
    hit = x;
    return false;
  });
  return hit;
}

std::optional<ImprovingSet> bruteforce_find_pw(const SetFamily& family,
                                               const Packing& packing, int r,
                                               int pw) {
  if (pw < 0) throw PreconditionError("pathwidth bound must be non-negative");
  ConflictGraph cg(family, packing);
  std::optional<ImprovingSet> hit;
  for_each_improving_set(family, packing, r, [&](const ImprovingSet& x) {
    std::vector<SetIndex> vertex_sets;
    Graph g = induced_conflict_subgraph(cg, x.sets, &vertex_sets);
    PathwidthResult res = exact_pathwidth(g);
    if (res.width > pw) return true;
    hit = x;
    std::vector<std::vector<SetIndex>> bags;
    for (const auto& b : res.witness.bags) {
      std::vector<SetIndex> bag;
      for (int v : b) bag.push_back(vertex_sets[v]);
      std::sort(bag.begin(), bag.end());
      bags.push_back(std::move(bag));
    }
    hit->witness_bags = std::move(bags);
    return false;
  });
  return hit;
}

}  // namespace ksp
