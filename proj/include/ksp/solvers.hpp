#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksp/colorcoding.hpp"
#include "ksp/core.hpp"

namespace ksp {

// Thrown when a time budget runs out; carries the best packing found so far.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, Packing incumbent)
      : Error(ErrorCode::kBudget, what), incumbent_(std::move(incumbent)) {}
  const Packing& incumbent() const noexcept { return incumbent_; }

 private:
  Packing incumbent_;
};

// Index-order greedy; the result is inclusion-wise maximal.
Packing greedy_maximal(const SetFamily& family);

// Maximum-cardinality packing by branch and bound over elements: the
// scarcest uncovered element is either covered by one of its remaining sets
// or left uncovered. budget_seconds <= 0 means unlimited; on expiry throws
// BudgetExceededError with the incumbent.
Packing exact_max_packing(const SetFamily& family, double budget_seconds = 0.0);

enum class SolverMode { kGreedy, kExact, kSwapBruteforce, kSwapPathwidth };

struct SolverConfig {
  SolverMode mode = SolverMode::kGreedy;
  int r = 2;                    // swap size bound (swap modes)
  int pw = 1;                   // pathwidth bound (kSwapPathwidth)
  std::int64_t trials = 0;      // 0: trial_count(s, k, failure_prob) per size
  std::uint64_t seed = 0;
  double failure_prob = 0.01;
  std::int64_t iteration_cap = 0;  // 0: unlimited swap applications
  double budget_seconds = 0.0;     // 0: unlimited
};

void validate(const SolverConfig& config);

struct LocalSearchResult {
  Packing start;
  Packing packing;
  std::vector<ImprovingSet> trace;  // applied swaps, in order
  bool budget_terminated = false;
  std::int64_t coloring_trials = 0;
};

// Runs the configured algorithm. Swap modes start from greedy_maximal and
// apply improving sets until none is found. The pathwidth mode sweeps the
// swap size s = 1, 2, ..., r (size 1 by direct scan, larger sizes by colored
// search with bound pw) and restarts the sweep after every applied swap.
LocalSearchResult local_search(const SetFamily& family,
                               const SolverConfig& config);

// Re-applies a trace from `start`, verifying every swap.
Packing replay_trace(const SetFamily& family, const Packing& start,
                     const std::vector<ImprovingSet>& trace);

struct SuggestedParameters {
  int r = 0;
  int pw = 0;
  std::string warning;
};

// r = ceil(2 (k+1)^(1/eps) log2 n_sets), pw = ceil(4 (k+1)^(1/eps)).
// These are the analysis constants; they are rarely practical.
SuggestedParameters suggested_parameters(int k, double eps, int n_sets);

const char* mode_name(SolverMode mode);

}  // namespace ksp
