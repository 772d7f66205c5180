#pragma once

#include <optional>

#include "xsched/core.hpp"
#include "xsched/partition.hpp"
#include "xsched/rational.hpp"

namespace xsched {

/// Decides whether a schedule with makespan at most `bound` exists; if so,
/// returns one. Machine i may carry at most floor(speed_i * bound) total size,
/// capped at the job volume since more can never be used; the gap between that
/// capacity and the job volume is padded with unit-size dummy jobs, the padded
/// instance is solved as an exact partition, and the dummies are stripped
/// again (descending machine index).
std::optional<Assignment> decide_makespan(const SchedulingInstance& inst, const Rational& bound,
                                          const PartitionSolveOptions& options = {});

struct MakespanResult {
  Rational value;
  Assignment assignment;
};

/// Exact makespan minimization. The optimum is of the form L / speed_i with
/// 0 <= L <= total_jobs * p_max, so the candidate set is finite; it is never
/// materialized. The search bisects the candidate value space with exact
/// rational arithmetic, counting candidates via floor(x * speed_i), and probes
/// decide_makespan O(log(m * n * p_max)) times.
MakespanResult solve_makespan(const SchedulingInstance& inst,
                              const PartitionSolveOptions& options = {});

}  // namespace xsched
