#include "ksp/core.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ksp {

SetFamily::SetFamily(int n_elements, int k,
                     std::vector<std::vector<ElementId>> sets)
    : n_elements_(n_elements), k_(k), sets_(std::move(sets)) {
  if (n_elements_ < 0) throw PreconditionError("negative universe size");
  if (k_ < 1) throw PreconditionError("k must be at least 1");
  incidence_.assign(static_cast<std::size_t>(n_elements_) + 1, {});
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const auto& s = sets_[i];
    const std::string where = "set " + std::to_string(i) + ": ";
    if (s.empty()) throw PreconditionError(where + "empty set");
    if (static_cast<int>(s.size()) > k_)
      throw PreconditionError(where + "size exceeds k=" + std::to_string(k_));
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 1 || s[j] > n_elements_)
        throw PreconditionError(where + "element " + std::to_string(s[j]) +
                                " out of range");
      if (j > 0 && s[j - 1] >= s[j])
        throw PreconditionError(where + "elements not strictly increasing");
      incidence_[s[j]].push_back(static_cast<SetIndex>(i));
    }
  }
  std::vector<std::size_t> order(sets_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sets_[a] < sets_[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (sets_[order[i - 1]] == sets_[order[i]])
      throw PreconditionError("sets " + std::to_string(order[i - 1]) +
                              " and " + std::to_string(order[i]) +
                              " are identical");
  }
}

bool SetFamily::intersects(SetIndex a, SetIndex b) const {
  const auto& x = sets_.at(a);
  const auto& y = sets_.at(b);
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

bool Packing::contains(SetIndex s) const {
  return std::binary_search(members.begin(), members.end(), s);
}

bool pairwise_disjoint(const SetFamily& family,
                       std::span<const SetIndex> sets) {
  std::vector<char> used(static_cast<std::size_t>(family.n_elements()) + 1, 0);
  for (SetIndex s : sets) {
    for (ElementId e : family.set(s)) {
      if (used[e]) return false;
      used[e] = 1;
    }
  }
  return true;
}

bool is_valid_packing(const SetFamily& family, const Packing& packing,
                      std::string* reason) {
  auto fail = [&](std::string msg) {
    if (reason) *reason = std::move(msg);
    return false;
  };
  for (std::size_t i = 0; i < packing.members.size(); ++i) {
    SetIndex s = packing.members[i];
    if (s < 0 || s >= family.num_sets())
      return fail("set index " + std::to_string(s) + " out of range");
    if (i > 0 && packing.members[i - 1] >= s)
      return fail("set indices not strictly increasing");
  }
  std::vector<SetIndex> owner(static_cast<std::size_t>(family.n_elements()) + 1,
                              -1);
  for (SetIndex s : packing.members) {
    for (ElementId e : family.set(s)) {
      if (owner[e] >= 0)
        return fail("sets " + std::to_string(owner[e]) + " and " +
                    std::to_string(s) + " share element " + std::to_string(e));
      owner[e] = s;
    }
  }
  return true;
}

Packing make_packing(const SetFamily& family, std::vector<SetIndex> members) {
  std::sort(members.begin(), members.end());
  Packing p{std::move(members)};
  std::string reason;
  if (!is_valid_packing(family, p, &reason))
    throw PreconditionError("invalid packing: " + reason);
  return p;
}

ConflictGraph::ConflictGraph(const SetFamily& family, const Packing& packing) {
  std::string reason;
  if (!is_valid_packing(family, packing, &reason))
    throw PreconditionError("invalid packing: " + reason);
  const int m = family.num_sets();
  member_.assign(m, false);
  for (SetIndex s : packing.members) member_[s] = true;
  for (SetIndex s = 0; s < m; ++s) (member_[s] ? left_ : right_).push_back(s);
  adj_.assign(m, {});
  // Each element lies in at most one member, so the member side of every
  // intersection is found through the element's owner.
  std::vector<SetIndex> owner(static_cast<std::size_t>(family.n_elements()) + 1,
                              -1);
  for (SetIndex s : left_)
    for (ElementId e : family.set(s)) owner[e] = s;
  for (SetIndex s : right_) {
    auto& nb = adj_[s];
    for (ElementId e : family.set(s))
      if (owner[e] >= 0) nb.push_back(owner[e]);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (SetIndex mem : nb) adj_[mem].push_back(s);
    num_edges_ += nb.size();
  }
}

const std::vector<SetIndex>& ConflictGraph::member_neighbors(SetIndex s) const {
  if (s < 0 || s >= num_sets() || member_[s])
    throw PreconditionError("set " + std::to_string(s) +
                            " is not a non-member");
  return adj_[s];
}

const std::vector<SetIndex>& ConflictGraph::nonmember_neighbors(
    SetIndex m) const {
  if (m < 0 || m >= num_sets() || !member_[m])
    throw PreconditionError("set " + std::to_string(m) + " is not a member");
  return adj_[m];
}

ConflictGraph build_conflict_graph(const SetFamily& family,
                                   const Packing& packing) {
  return ConflictGraph(family, packing);
}

std::vector<SetIndex> neighborhood(const ConflictGraph& cg,
                                   std::span<const SetIndex> x) {
  std::vector<SetIndex> out;
  for (SetIndex s : x) {
    const auto& nb = cg.member_neighbors(s);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Sorted, duplicate-free copy of x; throws on duplicates.
std::vector<SetIndex> normalized(std::span<const SetIndex> x) {
  std::vector<SetIndex> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw PreconditionError("repeated set index in X");
  return v;
}

}  // namespace

bool is_improving_set(const SetFamily& family, const Packing& packing,
                      std::span<const SetIndex> x) {
  ConflictGraph cg(family, packing);
  auto xs = normalized(x);
  auto nb = neighborhood(cg, xs);
  return pairwise_disjoint(family, xs) && nb.size() < xs.size();
}

ImprovingSet make_improving_set(const SetFamily& family,
                                const Packing& packing,
                                std::vector<SetIndex> x) {
  ConflictGraph cg(family, packing);
  auto xs = normalized(x);
  auto nb = neighborhood(cg, xs);
  if (!pairwise_disjoint(family, xs))
    throw PreconditionError("sets of X are not pairwise disjoint");
  if (nb.size() >= xs.size())
    throw PreconditionError("|N(X)| is not smaller than |X|");
  return ImprovingSet{std::move(xs), std::move(nb), std::nullopt};
}

Packing apply_swap(const SetFamily& family, const Packing& packing,
                   const ImprovingSet& x) {
  ImprovingSet checked = make_improving_set(family, packing, x.sets);
  if (checked.removed != x.removed)
    throw PreconditionError("recorded N(X) does not match the conflict graph");
  std::vector<SetIndex> next;
  std::set_difference(packing.members.begin(), packing.members.end(),
                      checked.removed.begin(), checked.removed.end(),
                      std::back_inserter(next));
  next.insert(next.end(), checked.sets.begin(), checked.sets.end());
  Packing out = make_packing(family, std::move(next));
  if (out.size() <= packing.size())
    throw VerificationError("swap did not increase the packing");
  return out;
}

}  // namespace ksp
