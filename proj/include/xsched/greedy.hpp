#pragma once

#include <vector>

#include "xsched/core.hpp"
#include "xsched/modip.hpp"

namespace xsched::greedy {

/// One batched move: in `phase`, `count` jobs of size `size` left (phase 1) or
/// entered (phases 2 and 3) machine `machine`.
struct TraceRecord {
  int phase;
  std::size_t machine;
  Int size;
  Int count;
};

struct GreedyStats {
  long long congruence_checks = 0;
  long long conservation_checks = 0;
  long long witness_checks = 0;
  long long placements = 0;
};

struct ReconstructOptions {
  bool check_invariants = true;
  std::vector<TraceRecord>* trace = nullptr;
  GreedyStats* stats = nullptr;
};

/// Mutable state threaded through the three phases. `bundle_pool[k]` counts
/// removed bundles of `pivot` many size-k jobs; `pivot_pool` counts removed
/// pivot-size jobs individually.
struct ReconstructionState {
  const PartitionInstance* inst;
  const modip::PivotModel* model;
  Assignment z;
  std::vector<Int> loads;          // cached, kept in sync with z
  Int pivot_pool;
  std::vector<Int> bundle_pool;    // per size index; the pivot's entry stays 0
  ReconstructOptions options;
};

ReconstructionState make_state(const PartitionInstance& inst, const modip::PivotModel& model,
                               Assignment z, const ReconstructOptions& options = {});

/// Phase 1: every big machine gives up all its pivot-size jobs and, per other
/// size, all full bundles of `pivot` many jobs. Afterwards each big machine
/// holds at most (d-1)(a-1) jobs and its load is strictly below its target.
void phase1_strip(ReconstructionState& state);

/// Phase 2: bundles go back onto big machines; machines scanned in ascending
/// index, bundle sizes in descending size, each visit placing the largest
/// batch that fits under the target. While bundles remain, some big machine
/// has load <= T_i - p_max^2 (checked).
void phase2_place_bundles(ReconstructionState& state);

/// Phase 3: pivot-size jobs fill the remaining slack, which is a multiple of
/// the pivot on every big machine. Ends with every load exactly on target.
void phase3_place_pivots(ReconstructionState& state);

/// Runs the three phases on a verified relaxed solution and returns an exact
/// partition. The input must satisfy the relaxed load conditions (checked via
/// check_modip_solution); the result always satisfies verify_partition.
Assignment reconstruct(const PartitionInstance& inst, const modip::PivotModel& model, Assignment z,
                       const ReconstructOptions& options = {});

}  // namespace xsched::greedy
