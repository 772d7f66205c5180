#pragma once

#include <cstdint>
#include <vector>

#include "xsched/core.hpp"

namespace xsched::gen {

/// Parameters for random instance construction. When `sizes` is nonempty it is
/// used verbatim (must be strictly increasing positive) and `d`/`p_max` are
/// ignored; otherwise `d` distinct sizes are drawn from [1, p_max].
struct GenParams {
  long long d = 2;
  long long p_max = 5;
  long long m = 2;
  long long n = 6;       // total number of jobs
  long long s_max = 3;   // scheduling only: speeds drawn from [1, s_max]
  std::uint64_t seed = 1;
  std::vector<Int> sizes;
};

/// Draws jobs, splits every size's count across the machines at random, and
/// sets each target to the load of that hidden split, so the instance is
/// feasible by construction. Deterministic for a fixed seed on any platform.
PartitionInstance gen_feasible_partition(const GenParams& params);

/// Draws jobs and uniform random speeds from [1, s_max]. The instance carries
/// no planted structure.
SchedulingInstance gen_uniform_random(const GenParams& params);

}  // namespace xsched::gen
