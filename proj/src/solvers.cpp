#include "ksp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ksp/swapsearch.hpp"

namespace ksp {

namespace {

using Clock = std::chrono::steady_clock;

std::optional<Clock::time_point> deadline_after(double seconds) {
  if (seconds <= 0.0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(seconds));
}

bool expired(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

class BranchAndBound {
 public:
  BranchAndBound(const SetFamily& family, double budget_seconds)
      : family_(family),
        deadline_(deadline_after(budget_seconds)),
        blocked_(family.num_sets(), 0),
        free_(static_cast<std::size_t>(family.n_elements()) + 1, 0),
        live_count_(static_cast<std::size_t>(family.n_elements()) + 1, 0) {
    for (int e = 1; e <= family.n_elements(); ++e) {
      live_count_[e] = static_cast<int>(family.sets_containing(e).size());
      if (live_count_[e] > 0) {
        free_[e] = 1;
        ++free_elements_;
      }
    }
    min_size_ = family.k();
    for (const auto& s : family.sets())
      min_size_ = std::min(min_size_, static_cast<int>(s.size()));
    best_ = greedy_maximal(family).members;
  }

  Packing solve() {
    if (family_.num_sets() > 0) branch();
    std::sort(best_.begin(), best_.end());
    return Packing{best_};
  }

 private:
  // Upper bound: every further set consumes at least min_size_ free elements
  // that still lie in some live set.
  int bound() const {
    return static_cast<int>(chosen_.size()) + free_elements_ / min_size_;
  }

  void block_set(SetIndex s, std::vector<SetIndex>& undo) {
    if (blocked_[s]) return;
    blocked_[s] = 1;
    undo.push_back(s);
    for (ElementId e : family_.set(s)) {
      if (--live_count_[e] == 0 && free_[e]) {
        free_[e] = 0;
        --free_elements_;
        dead_.push_back(e);
      }
    }
  }

  void unblock(std::vector<SetIndex>& undo, std::size_t mark,
               std::size_t dead_mark) {
    while (undo.size() > mark) {
      SetIndex s = undo.back();
      undo.pop_back();
      blocked_[s] = 0;
      for (ElementId e : family_.set(s)) ++live_count_[e];
    }
    while (dead_.size() > dead_mark) {
      free_[dead_.back()] = 1;
      ++free_elements_;
      dead_.pop_back();
    }
  }

  // Element still coverable by the fewest live sets.
  ElementId pick_element() const {
    ElementId best = -1;
    int best_count = std::numeric_limits<int>::max();
    for (int e = 1; e <= family_.n_elements(); ++e) {
      if (!free_[e]) continue;
      if (live_count_[e] < best_count) {
        best = e;
        best_count = live_count_[e];
        if (best_count == 1) break;
      }
    }
    return best;
  }

  void branch() {
    if ((++nodes_ & 1023) == 0 && expired(deadline_)) {
      std::sort(best_.begin(), best_.end());
      throw BudgetExceededError("exact solver budget exhausted",
                                Packing{best_});
    }
    if (static_cast<int>(chosen_.size()) > static_cast<int>(best_.size()))
      best_ = chosen_;
    if (bound() <= static_cast<int>(best_.size())) return;
    ElementId e = pick_element();
    if (e < 0) return;

    std::vector<SetIndex> candidates;
    for (SetIndex s : family_.sets_containing(e))
      if (!blocked_[s]) candidates.push_back(s);

    for (SetIndex s : candidates) {
      std::vector<SetIndex> undo;
      const std::size_t dead_mark = dead_.size();
      // Taking s removes every set meeting it, including s itself.
      for (ElementId x : family_.set(s)) {
        for (SetIndex t : family_.sets_containing(x)) block_set(t, undo);
        if (free_[x]) {
          free_[x] = 0;
          --free_elements_;
          dead_.push_back(x);
        }
      }
      chosen_.push_back(s);
      branch();
      chosen_.pop_back();
      unblock(undo, 0, dead_mark);
      if (bound() <= static_cast<int>(best_.size())) return;
    }
    // Leave e uncovered.
    std::vector<SetIndex> undo;
    const std::size_t dead_mark = dead_.size();
    for (SetIndex t : candidates) block_set(t, undo);
    branch();
    unblock(undo, 0, dead_mark);
  }

  const SetFamily& family_;
  std::optional<Clock::time_point> deadline_;
  std::vector<char> blocked_;
  std::vector<char> free_;
  std::vector<int> live_count_;
  std::vector<ElementId> dead_;
  int free_elements_ = 0;
  int min_size_ = 1;
  std::vector<SetIndex> chosen_;
  std::vector<SetIndex> best_;
  std::uint64_t nodes_ = 0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a simple combination.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) +
                    0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Packing greedy_maximal(const SetFamily& family) {
  std::vector<char> used(static_cast<std::size_t>(family.n_elements()) + 1, 0);
  Packing p;
  for (SetIndex s = 0; s < family.num_sets(); ++s) {
    auto elems = family.set(s);
    if (std::any_of(elems.begin(), elems.end(),
                    [&](ElementId e) { return used[e] != 0; }))
      continue;
    for (ElementId e : elems) used[e] = 1;
    p.members.push_back(s);
  }
  return p;
}

Packing exact_max_packing(const SetFamily& family, double budget_seconds) {
  return BranchAndBound(family, budget_seconds).solve();
}

const char* mode_name(SolverMode mode) {
  switch (mode) {
    case SolverMode::kGreedy:
      return "greedy";
    case SolverMode::kExact:
      return "exact";
    case SolverMode::kSwapBruteforce:
      return "swap";
    case SolverMode::kSwapPathwidth:
      return "pwls";
  }
  return "?";
}

void validate(const SolverConfig& config) {
  if (config.r < 1) throw PreconditionError("r must be at least 1");
  if (config.pw < 0) throw PreconditionError("pw must be non-negative");
  if (config.trials < 0) throw PreconditionError("trials must be positive");
  if (config.iteration_cap < 0)
    throw PreconditionError("iteration cap must be non-negative");
  if (config.budget_seconds < 0)
    throw PreconditionError("budget must be non-negative");
  if (!(config.failure_prob > 0.0 && config.failure_prob < 1.0))
    throw PreconditionError("failure probability must lie in (0, 1)");
}

LocalSearchResult local_search(const SetFamily& family,
                               const SolverConfig& config) {
  validate(config);
  LocalSearchResult res;
  switch (config.mode) {
    case SolverMode::kGreedy:
      res.packing = res.start = greedy_maximal(family);
      return res;
    case SolverMode::kExact:
      try {
        res.packing = exact_max_packing(family, config.budget_seconds);
      } catch (const BudgetExceededError& e) {
        res.packing = e.incumbent();
        res.budget_terminated = true;
      }
      res.start = res.packing;
      return res;
    case SolverMode::kSwapBruteforce:
    case SolverMode::kSwapPathwidth:
      break;
  }

  const auto deadline = deadline_after(config.budget_seconds);
  res.start = greedy_maximal(family);
  Packing cur = res.start;
  std::int64_t iteration = 0;
  while (true) {
    if (config.iteration_cap > 0 && iteration >= config.iteration_cap) {
      res.budget_terminated = true;
      break;
    }
    if (expired(deadline)) {
      res.budget_terminated = true;
      break;
    }
    std::optional<ImprovingSet> hit;
    if (config.mode == SolverMode::kSwapBruteforce) {
      hit = find_first_improving_set(family, cur, config.r);
    } else {
      for (int s = 1; s <= config.r && !hit; ++s) {
        SearchParams params;
        params.r = s;
        params.pw = config.pw;
        params.trials = config.trials;
        params.failure_prob = config.failure_prob;
        params.seed = mix_seed(config.seed, static_cast<std::uint64_t>(iteration),
                               static_cast<std::uint64_t>(s));
        params.deadline = deadline;
        SearchStats stats;
        hit = find_improving_set(family, cur, params, &stats);
        res.coloring_trials += stats.trials_run;
        if (stats.deadline_hit) {
          res.budget_terminated = true;
          break;
        }
      }
      if (res.budget_terminated) break;
    }
    if (!hit) break;
    cur = apply_swap(family, cur, *hit);
    res.trace.push_back(std::move(*hit));
    ++iteration;
  }
  res.packing = std::move(cur);
  return res;
}

Packing replay_trace(const SetFamily& family, const Packing& start,
                     const std::vector<ImprovingSet>& trace) {
  Packing cur = make_packing(family, start.members);
  for (const auto& x : trace) cur = apply_swap(family, cur, x);
  return cur;
}

SuggestedParameters suggested_parameters(int k, double eps, int n_sets) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (n_sets < 2) throw PreconditionError("n_sets must be at least 2");
  const double base = std::pow(static_cast<double>(k + 1), 1.0 / eps);
  // Tolerance absorbs rounding in pow/log2 for exact powers.
  constexpr double kSlack = 1e-9;
  const double r = std::ceil(2.0 * base * std::log2(n_sets) - kSlack);
  const double pw = std::ceil(4.0 * base - kSlack);
  constexpr double kIntMax = std::numeric_limits<int>::max();
  SuggestedParameters out;
  out.r = static_cast<int>(std::min(r, kIntMax));
  out.pw = static_cast<int>(std::min(pw, kIntMax));
  out.warning =
      "analysis constants; colored search is exponential in r*k and "
      "polynomial of degree pw in the number of sets, so practical runs "
      "should override r and pw";
  return out;
}

}  // namespace ksp
