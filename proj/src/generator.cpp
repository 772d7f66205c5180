#include "xsched/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "xsched/errors.hpp"

namespace xsched::gen {

namespace {

// mt19937_64 output is pinned by the standard; taking the remainder keeps the
// draw identical on every platform, unlike std::uniform_int_distribution.
// The modulo bias is irrelevant for test data.
unsigned long long bounded(std::mt19937_64& rng, unsigned long long n) {
  return n == 0 ? 0 : rng() % n;
}

void check_params(const GenParams& params, bool need_speeds) {
  if (params.n < 1) throw InvalidArgumentError("n must be positive");
  if (params.m < 1) throw InvalidArgumentError("m must be positive");
  if (params.n < params.m)
    throw InvalidArgumentError("n must be at least m (" + std::to_string(params.n) + " jobs, " +
                               std::to_string(params.m) + " machines)");
  if (params.sizes.empty()) {
    if (params.d < 1) throw InvalidArgumentError("d must be positive");
    if (params.p_max < params.d)
      throw InvalidArgumentError("p_max must be at least d to allow distinct sizes");
    if (params.n < params.d)
      throw InvalidArgumentError("n must be at least d so every size occurs");
  } else {
    if (params.n < static_cast<long long>(params.sizes.size()))
      throw InvalidArgumentError("n must be at least the number of sizes");
  }
  if (need_speeds && params.s_max < 1) throw InvalidArgumentError("s_max must be positive");
}

std::vector<Int> draw_sizes(const GenParams& params, std::mt19937_64& rng) {
  if (!params.sizes.empty()) return params.sizes;
  std::set<unsigned long long> picked;
  while (picked.size() < static_cast<std::size_t>(params.d))
    picked.insert(1 + bounded(rng, static_cast<unsigned long long>(params.p_max)));
  return std::vector<Int>(picked.begin(), picked.end());
}

/// Splits `total` into `parts` nonnegative summands via sorted random cuts.
std::vector<Int> random_split(std::mt19937_64& rng, long long total, std::size_t parts) {
  std::vector<unsigned long long> cuts;
  cuts.reserve(parts + 1);
  cuts.push_back(0);
  for (std::size_t i = 0; i + 1 < parts; ++i)
    cuts.push_back(bounded(rng, static_cast<unsigned long long>(total) + 1));
  cuts.push_back(static_cast<unsigned long long>(total));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Int> out;
  out.reserve(parts);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.push_back(Int(cuts[i + 1]) - Int(cuts[i]));
  return out;
}

JobProfile draw_jobs(const GenParams& params, std::mt19937_64& rng) {
  std::vector<Int> sizes = draw_sizes(params, rng);
  const std::size_t d = sizes.size();
  // Compose n as d positive counts: split the surplus n - d, then add 1 each.
  std::vector<Int> counts = random_split(rng, params.n - static_cast<long long>(d), d);
  for (Int& c : counts) c += Int(1);
  return JobProfile(std::move(sizes), std::move(counts));
}

}  // namespace

PartitionInstance gen_feasible_partition(const GenParams& params) {
  check_params(params, false);
  std::mt19937_64 rng(params.seed);
  JobProfile jobs = draw_jobs(params, rng);

  const std::size_t m = static_cast<std::size_t>(params.m);
  std::vector<Int> targets(m, Int(0));
  for (std::size_t k = 0; k < jobs.num_sizes(); ++k) {
    std::vector<Int> split = random_split(rng, jobs.count_at(k).to_int64(), m);
    for (std::size_t i = 0; i < m; ++i) targets[i] += jobs.size_at(k) * split[i];
  }
  // A machine with zero target is fine; balance holds by construction.
  return PartitionInstance(std::move(jobs), std::move(targets));
}

SchedulingInstance gen_uniform_random(const GenParams& params) {
  check_params(params, true);
  std::mt19937_64 rng(params.seed);
  JobProfile jobs = draw_jobs(params, rng);

  std::vector<Int> speeds;
  speeds.reserve(static_cast<std::size_t>(params.m));
  for (long long i = 0; i < params.m; ++i)
    speeds.push_back(Int(1 + bounded(rng, static_cast<unsigned long long>(params.s_max))));
  return SchedulingInstance(std::move(jobs), std::move(speeds));
}

}  // namespace xsched::gen
