#include "ksp/colorcoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>

#include "ksp/pathdecomp.hpp"

namespace ksp {

PaddedFamily pad_to_uniform(const SetFamily& family, int k) {
  if (k < family.k() && family.num_sets() > 0) {
    for (const auto& s : family.sets())
      if (static_cast<int>(s.size()) > k)
        throw PreconditionError("set larger than padding target k=" +
                                std::to_string(k));
  }
  PaddedFamily out;
  out.original_elements = family.n_elements();
  int next = family.n_elements();
  std::vector<std::vector<ElementId>> sets = family.sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    while (static_cast<int>(sets[i].size()) < k) {
      sets[i].push_back(++next);
      out.dummy_owner.push_back(static_cast<SetIndex>(i));
    }
  }
  out.family = SetFamily(next, k, std::move(sets));
  return out;
}

std::int64_t trial_count(int r, int k, double failure_prob) {
  if (r < 2)
    throw PreconditionError(
        "trial_count needs r >= 2; size-1 swaps use the direct scan");
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (!(failure_prob > 0.0 && failure_prob < 1.0))
    throw PreconditionError("failure probability must lie in (0, 1)");
  const double exponent = static_cast<double>(r - 1) +
                          static_cast<double>(r) * static_cast<double>(k);
  const double trials = std::exp(exponent) * std::log(1.0 / failure_prob);
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (!std::isfinite(trials) || trials >= 9.0e18) return kMax;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(trials)));
}

void validate(const SearchParams& params) {
  if (params.r < 1) throw PreconditionError("r must be at least 1");
  if (params.pw < 0) throw PreconditionError("pw must be non-negative");
  if (params.trials < 0) throw PreconditionError("trials must be positive");
  if (!(params.failure_prob > 0.0 && params.failure_prob < 1.0))
    throw PreconditionError("failure probability must lie in (0, 1)");
}

Coloring random_coloring(const SetFamily& padded, const Packing& packing,
                         int r, std::uint64_t seed, std::int64_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t),
                    static_cast<std::uint32_t>(t >> 32)};
  std::mt19937_64 rng(seq);
  Coloring c;
  c.member_color.assign(padded.num_sets(), 0);
  std::uniform_int_distribution<int> member_dist(1, std::max(1, r - 1));
  for (SetIndex m : packing.members) c.member_color[m] = member_dist(rng);
  std::uniform_int_distribution<int> element_dist(1, r * padded.k());
  c.element_color.assign(static_cast<std::size_t>(padded.n_elements()) + 1, 0);
  for (int e = 1; e <= padded.n_elements(); ++e)
    c.element_color[e] = element_dist(rng);
  return c;
}

namespace {

using Word = std::uint64_t;
constexpr Word kNoSet = std::numeric_limits<Word>::max();

int words_for(int bits) { return (bits + 63) / 64; }

struct KeyHash {
  std::size_t operator()(const std::vector<Word>& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Word w : key) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// State graph under one fixed coloring. A key is laid out as
// [member-color words | element-color words | bag slots (sorted, kNoSet pad)].
class StateSearch {
 public:
  StateSearch(const SetFamily& family, const Packing& packing,
              const Coloring& coloring, int r, int pw)
      : family_(family),
        cg_(family, packing),
        k_(family.k()),
        pw_(pw),
        wf_(words_for(r - 1)),
        wu_(words_for(r * family.k())),
        bag_slots_(pw + 1) {
    const int m = family.num_sets();
    info_.resize(m);
    for (SetIndex s = 0; s < m; ++s) {
      SetInfo& in = info_[s];
      in.element_colors.assign(wu_, 0);
      in.neighbor_colors.assign(wf_, 0);
      if (cg_.is_member(s)) {
        in.member = true;
        in.color = coloring.member_color[s] - 1;
        in.usable = !cg_.neighbors(s).empty();
        continue;
      }
      in.usable = true;
      for (ElementId e : family.set(s)) {
        int bit = coloring.element_color[e] - 1;
        Word& w = in.element_colors[bit / 64];
        if (w & (Word{1} << (bit % 64))) in.usable = false;
        w |= Word{1} << (bit % 64);
      }
      for (SetIndex nb : cg_.member_neighbors(s)) {
        int bit = coloring.member_color[nb] - 1;
        Word& w = in.neighbor_colors[bit / 64];
        if (w & (Word{1} << (bit % 64))) in.usable = false;
        w |= Word{1} << (bit % 64);
      }
    }
  }

  std::optional<std::vector<int>> run() {
    std::vector<Word> root(static_cast<std::size_t>(wf_ + wu_ + bag_slots_), 0);
    std::fill(root.begin() + wf_ + wu_, root.end(), kNoSet);
    add_node(std::move(root), -1);
    std::vector<int> stack{0};
    std::vector<Word> next;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      // Copy: add_node may reallocate nodes_.
      const std::vector<Word> key = nodes_[cur].key;
      const int bag_size = bag_count(key);

      for (int slot = 0; slot < bag_size; ++slot) {
        SetIndex s = static_cast<SetIndex>(key[wf_ + wu_ + slot]);
        if (!can_forget(key, s)) continue;
        next = key;
        erase_from_bag(next, slot);
        if (int id = add_node(std::move(next), cur); id >= 0) {
          if (accepting(nodes_[id].key)) return path_to(id);
          stack.push_back(id);
        }
      }
      if (bag_size > pw_) continue;
      for (SetIndex s = 0; s < family_.num_sets(); ++s) {
        const SetInfo& in = info_[s];
        if (!in.usable) continue;
        bool ok = in.member ? can_introduce_member(key, bag_size, s)
                            : can_introduce_nonmember(key, bag_size, s);
        if (!ok) continue;
        next = key;
        if (in.member) {
          set_bit(next, 0, in.color);
        } else {
          for (int w = 0; w < wu_; ++w) next[wf_ + w] |= in.element_colors[w];
        }
        insert_into_bag(next, bag_size, s);
        if (int id = add_node(std::move(next), cur); id >= 0) stack.push_back(id);
      }
    }
    return std::nullopt;
  }

  std::vector<SetIndex> bag_of(int node) const {
    const auto& key = nodes_[node].key;
    std::vector<SetIndex> bag;
    for (int i = 0; i < bag_slots_; ++i) {
      Word w = key[wf_ + wu_ + i];
      if (w == kNoSet) break;
      bag.push_back(static_cast<SetIndex>(w));
    }
    return bag;
  }

  std::int64_t visited() const {
    return static_cast<std::int64_t>(nodes_.size());
  }
  const ConflictGraph& conflict_graph() const { return cg_; }

 private:
  struct SetInfo {
    bool member = false;
    bool usable = false;  // colors injective on the set / on N(set)
    int color = -1;       // member color bit
    std::vector<Word> element_colors;
    std::vector<Word> neighbor_colors;
  };
  struct Node {
    std::vector<Word> key;
    int parent;
  };

  static bool test_bit(const std::vector<Word>& key, int offset, int bit) {
    return (key[offset + bit / 64] >> (bit % 64)) & 1;
  }
  static void set_bit(std::vector<Word>& key, int offset, int bit) {
    key[offset + bit / 64] |= Word{1} << (bit % 64);
  }

  int bag_count(const std::vector<Word>& key) const {
    int n = 0;
    while (n < bag_slots_ && key[wf_ + wu_ + n] != kNoSet) ++n;
    return n;
  }
  bool in_bag(const std::vector<Word>& key, int bag_size, SetIndex s) const {
    auto first = key.begin() + wf_ + wu_;
    return std::binary_search(first, first + bag_size, static_cast<Word>(s));
  }
  void insert_into_bag(std::vector<Word>& key, int bag_size, SetIndex s) const {
    auto first = key.begin() + wf_ + wu_;
    auto pos = std::upper_bound(first, first + bag_size, static_cast<Word>(s));
    std::copy_backward(pos, first + bag_size, first + bag_size + 1);
    *pos = static_cast<Word>(s);
  }
  void erase_from_bag(std::vector<Word>& key, int slot) const {
    auto first = key.begin() + wf_ + wu_;
    std::copy(first + slot + 1, first + bag_slots_, first + slot);
    *(first + bag_slots_ - 1) = kNoSet;
  }

  bool can_introduce_nonmember(const std::vector<Word>& key, int bag_size,
                               SetIndex s) const {
    const SetInfo& in = info_[s];
    for (int w = 0; w < wu_; ++w)
      if (in.element_colors[w] & key[wf_ + w]) return false;
    for (SetIndex m : cg_.member_neighbors(s)) {
      if (in_bag(key, bag_size, m)) continue;
      if (test_bit(key, 0, info_[m].color)) return false;
    }
    return true;
  }

  bool can_introduce_member(const std::vector<Word>& key, int bag_size,
                            SetIndex m) const {
    const int color = info_[m].color;
    if (test_bit(key, 0, color)) return false;
    for (int i = 0; i < bag_size; ++i) {
      SetIndex other = static_cast<SetIndex>(key[wf_ + wu_ + i]);
      if (info_[other].member) continue;
      const auto& nb = cg_.member_neighbors(other);
      if (std::binary_search(nb.begin(), nb.end(), m)) continue;
      if ((info_[other].neighbor_colors[color / 64] >> (color % 64)) & 1)
        return false;
    }
    return true;
  }

  bool can_forget(const std::vector<Word>& key, SetIndex s) const {
    const SetInfo& in = info_[s];
    if (in.member) return true;
    for (int w = 0; w < wf_; ++w)
      if (in.neighbor_colors[w] & ~key[w]) return false;
    return true;
  }

  bool accepting(const std::vector<Word>& key) const {
    if (key[wf_ + wu_] != kNoSet) return false;
    int members = 0, elements = 0;
    for (int w = 0; w < wf_; ++w) members += std::popcount(key[w]);
    for (int w = 0; w < wu_; ++w) elements += std::popcount(key[wf_ + w]);
    return static_cast<long>(members) * k_ < elements;
  }

  // Returns the new node id, or -1 if the state was already visited.
  int add_node(std::vector<Word> key, int parent) {
    auto [it, inserted] =
        index_.try_emplace(key, static_cast<int>(nodes_.size()));
    if (!inserted) return -1;
    nodes_.push_back(Node{std::move(key), parent});
    return it->second;
  }

  std::vector<int> path_to(int node) const {
    std::vector<int> path;
    for (int v = node; v >= 0; v = nodes_[v].parent) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  const SetFamily& family_;
  ConflictGraph cg_;
  int k_;
  int pw_;
  int wf_;
  int wu_;
  int bag_slots_;
  std::vector<SetInfo> info_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<Word>, int, KeyHash> index_;
};

void check_coloring(const SetFamily& family, const Packing& packing,
                    const Coloring& c, int r) {
  if (static_cast<int>(c.member_color.size()) != family.num_sets())
    throw PreconditionError("member coloring must cover every set index");
  for (SetIndex m : packing.members)
    if (c.member_color[m] < 1 || c.member_color[m] > r - 1)
      throw PreconditionError("member " + std::to_string(m) +
                              " has no color in [1, r-1]");
  if (static_cast<int>(c.element_color.size()) != family.n_elements() + 1)
    throw PreconditionError("element coloring must cover every element");
  const int colors = r * family.k();
  for (int e = 1; e <= family.n_elements(); ++e)
    if (c.element_color[e] < 1 || c.element_color[e] > colors)
      throw PreconditionError("element " + std::to_string(e) +
                              " has no color in [1, r*k]");
}

}  // namespace

std::optional<ImprovingSet> search_with_coloring(const SetFamily& family,
                                                 const Packing& packing,
                                                 const Coloring& coloring,
                                                 int r, int pw,
                                                 SearchStats* stats) {
  if (r < 2)
    throw PreconditionError(
        "colored search needs r >= 2; size-1 swaps use the direct scan");
  if (pw < 0) throw PreconditionError("pw must be non-negative");
  for (const auto& s : family.sets())
    if (static_cast<int>(s.size()) != family.k())
      throw PreconditionError("family is not k-uniform; pad it first");
  check_coloring(family, packing, coloring, r);

  StateSearch search(family, packing, coloring, r, pw);
  auto path = search.run();
  if (stats) stats->states_visited += search.visited();
  if (!path) return std::nullopt;

  const ConflictGraph& cg = search.conflict_graph();
  std::vector<std::vector<SetIndex>> bags;
  std::vector<SetIndex> x;
  for (int node : *path) {
    bags.push_back(search.bag_of(node));
    for (SetIndex s : bags.back())
      if (!cg.is_member(s)) x.push_back(s);
  }
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());

  ImprovingSet result;
  try {
    result = make_improving_set(family, packing, x);
  } catch (const PreconditionError& e) {
    throw Error(ErrorCode::kInternal,
                std::string("colored search produced a non-improving set: ") +
                    e.what());
  }

  std::vector<SetIndex> closed;
  Graph g = induced_conflict_subgraph(cg, result.sets, &closed);
  PathDecomposition witness;
  std::vector<std::vector<SetIndex>> witness_sets;
  for (const auto& bag : bags) {
    std::vector<int> local;
    std::vector<SetIndex> kept;
    for (SetIndex s : bag) {
      auto it = std::lower_bound(closed.begin(), closed.end(), s);
      if (it == closed.end() || *it != s) continue;
      local.push_back(static_cast<int>(it - closed.begin()));
      kept.push_back(s);
    }
    if (!witness_sets.empty() && witness_sets.back() == kept) continue;
    witness.bags.push_back(std::move(local));
    witness_sets.push_back(std::move(kept));
  }
  if (!validate_decomposition(g, witness) || witness.width() > pw)
    throw Error(ErrorCode::kInternal,
                "colored search produced an invalid witness decomposition");
  result.witness_bags = std::move(witness_sets);
  return result;
}

std::optional<ImprovingSet> find_improving_set(const SetFamily& family,
                                               const Packing& packing,
                                               const SearchParams& params,
                                               SearchStats* stats) {
  validate(params);
  if (params.r == 1) {
    ConflictGraph cg(family, packing);
    for (SetIndex s : cg.right()) {
      if (!cg.member_neighbors(s).empty()) continue;
      ImprovingSet x{{s}, {}, std::vector<std::vector<SetIndex>>{{s}}};
      return x;
    }
    return std::nullopt;
  }
  const int k = std::max(1, family.k());
  PaddedFamily padded = pad_to_uniform(family, k);
  const std::int64_t trials = params.trials > 0
                                  ? params.trials
                                  : trial_count(params.r, k, params.failure_prob);
  for (std::int64_t t = 0; t < trials; ++t) {
    if (params.deadline && (t & 63) == 0 &&
        std::chrono::steady_clock::now() >= *params.deadline) {
      if (stats) stats->deadline_hit = true;
      return std::nullopt;
    }
    Coloring c = random_coloring(padded.family, packing, params.r, params.seed, t);
    if (stats) ++stats->trials_run;
    auto hit = search_with_coloring(padded.family, packing, c, params.r,
                                    params.pw, stats);
    if (hit) {
      if (stats) stats->successful_trial = t;
      return hit;
    }
  }
  return std::nullopt;
}

}  // namespace ksp
