#pragma once

#include <optional>

#include "xsched/core.hpp"
#include "xsched/mcilp.hpp"

namespace xsched::oracle {

inline constexpr long long kDefaultBudget = 100'000'000;

/// Exhaustive search over per-size count splits with running-target pruning.
/// Returns a witness assignment or nullopt if infeasible. Throws
/// BudgetExceededError when the node budget runs out; that outcome carries no
/// verdict. Completely independent of the polynomial solvers.
std::optional<Assignment> brute_partition(const PartitionInstance& inst,
                                          long long budget = kDefaultBudget);

/// Exhaustive makespan minimization; returns the exact optimum.
Rational brute_makespan(const SchedulingInstance& inst, long long budget = kDefaultBudget);

/// Exhaustive multi-choice ILP search: enumerates every per-group distribution
/// of the cardinality over its columns, filters by A x = b (or <= b), and
/// maximizes c^T x.
std::optional<mcilp::McilpSolution> brute_mcilp(
    const mcilp::McilpInstance& inst,
    mcilp::Relation relation = mcilp::Relation::Equality,
    long long budget = kDefaultBudget);

}  // namespace xsched::oracle
