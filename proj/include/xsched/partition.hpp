#pragma once

#include <optional>

#include "xsched/core.hpp"
#include "xsched/greedy.hpp"
#include "xsched/modip.hpp"

namespace xsched {

struct SolveStats {
  long long pivots_tried = 0;
  long long ilp_solves = 0;
  long long dp_layers = 0;       // largest layer count over all ILP solves
  long long dp_states_peak = 0;  // largest per-layer state count over all ILP solves
};

struct PartitionSolveOptions {
  /// Testing hook: try only this pivot size instead of all distinct sizes.
  std::optional<Int> forced_pivot;
  bool check_invariants = true;
  std::vector<greedy::TraceRecord>* trace = nullptr;
  SolveStats* stats = nullptr;
};

/// Exact feasibility solver: tries every distinct size as pivot in ascending
/// order; for each, builds the configuration ILP, solves it, decodes, and
/// repairs the relaxed solution greedily. The first pivot that works yields a
/// verified assignment. If every pivot fails the instance is infeasible: a
/// feasible partition always admits some working pivot.
std::optional<Assignment> solve_partition(const PartitionInstance& inst,
                                          const PartitionSolveOptions& options = {});

}  // namespace xsched
