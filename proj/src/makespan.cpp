#include "xsched/makespan.hpp"

namespace xsched {
namespace {

// Number of candidate values L / speed_i with 0 <= L <= l_max and value <= x
// (or < x), counted with multiplicity over machines. Exact.
Int count_candidates_le(const SchedulingInstance& inst, Int l_max, const Rational& x) {
  Int count(0);
  for (const Int& s : inst.speeds()) count += min(x.floor_scaled(s), l_max) + 1;
  return count;
}

Int count_candidates_lt(const SchedulingInstance& inst, Int l_max, const Rational& x) {
  Int count(0);
  for (const Int& s : inst.speeds()) {
    Int scaled = s * x.num();
    Int top = scaled % x.den() == Int(0) ? scaled / x.den() - 1 : floor_div(scaled, x.den());
    if (top < Int(0)) continue;
    count += min(top, l_max) + 1;
  }
  return count;
}

// Largest candidate <= x; x must be at least 0 (candidate L = 0 always exists).
Rational snap_down(const SchedulingInstance& inst, Int l_max, const Rational& x) {
  Rational best(0);
  for (const Int& s : inst.speeds()) {
    Rational cand(min(x.floor_scaled(s), l_max), s);
    if (cand > best) best = cand;
  }
  return best;
}

// Smallest candidate > x, assuming one exists.
Rational snap_up(const SchedulingInstance& inst, Int l_max, const Rational& x) {
  Rational best;
  bool have = false;
  for (const Int& s : inst.speeds()) {
    Int l = x.floor_scaled(s) + 1;
    if (l > l_max) continue;
    Rational cand(l, s);
    if (cand <= x) continue;  // guards floor(x*s)/s == x edge rounding
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  if (!have) throw InternalInvariantError("no candidate above the probe although one must exist");
  return best;
}

}  // namespace

std::optional<Assignment> decide_makespan(const SchedulingInstance& inst, const Rational& bound,
                                          const PartitionSolveOptions& options) {
  const JobProfile& jobs = inst.jobs();
  std::vector<Int> targets;
  targets.reserve(inst.num_machines());
  Int capacity(0);
  for (const Int& s : inst.speeds()) {
    // No machine can receive more than the whole volume, so capping the
    // capacity there never excludes a schedule; it keeps targets and dummy
    // counts from growing with the probe bound.
    Int t = min(max(Int(0), bound.floor_scaled(s)), jobs.total_size());
    targets.push_back(t);
    capacity += t;
  }
  if (capacity < jobs.total_size()) return std::nullopt;

  // Pad the capacity gap with unit-size dummies so the caps become exact
  // targets; merged into an existing unit class if there is one.
  Int dummies = capacity - jobs.total_size();
  bool prepended = false;
  std::vector<Int> sizes = jobs.sizes();
  std::vector<Int> counts = jobs.counts();
  if (dummies > Int(0)) {
    if (sizes.front() == Int(1)) {
      counts.front() += dummies;
    } else {
      sizes.insert(sizes.begin(), Int(1));
      counts.insert(counts.begin(), dummies);
      prepended = true;
    }
  }
  PartitionInstance padded(JobProfile(std::move(sizes), std::move(counts)), std::move(targets));
  auto solved = solve_partition(padded, options);
  if (!solved) return std::nullopt;

  // Remove the dummies again, highest machine index first. Only the unit
  // column shrinks, so the original column sums are restored exactly.
  Assignment& padded_asg = *solved;
  Int to_strip = dummies;
  for (std::size_t i = inst.num_machines(); i-- > 0 && to_strip > Int(0);) {
    Int take = min(to_strip, padded_asg.at(i, 0));
    padded_asg.add(i, 0, -take);
    to_strip -= take;
  }
  if (to_strip != Int(0)) throw InternalInvariantError("dummy jobs were lost during the solve");

  Assignment result(inst.num_machines(), jobs.num_sizes());
  for (std::size_t i = 0; i < inst.num_machines(); ++i) {
    if (prepended && padded_asg.at(i, 0) != Int(0))
      throw InternalInvariantError("a dummy unit job survived the strip");
    for (std::size_t k = 0; k < jobs.num_sizes(); ++k)
      result.set(i, k, padded_asg.at(i, k + (prepended ? 1 : 0)));
  }
  if (options.check_invariants && verify_makespan(inst, result) > bound)
    throw InternalInvariantError("witness exceeds the decided bound");
  return result;
}

MakespanResult solve_makespan(const SchedulingInstance& inst, const PartitionSolveOptions& options) {
  const JobProfile& jobs = inst.jobs();
  Int l_max = jobs.total_jobs() * jobs.p_max();
  Int s_min = inst.speed(0);
  for (const Int& s : inst.speeds()) s_min = min(s_min, s);

  Rational lo(0);
  if (auto zero = decide_makespan(inst, lo, options))
    return {lo, std::move(*zero)};  // unreachable for nonempty jobs, kept for symmetry

  Rational hi(l_max, s_min);
  auto witness = decide_makespan(inst, hi, options);
  if (!witness)
    throw InternalInvariantError("the trivial upper bound was rejected");

  // Bisect the candidate value space: every optimum is a candidate L/speed_i,
  // decide_makespan is monotone, and each step either halves the open
  // interval or empties it.
  for (int guard = 0; guard < 512; ++guard) {
    if (count_candidates_lt(inst, l_max, hi) - count_candidates_le(inst, l_max, lo) == Int(0))
      return {hi, std::move(*witness)};
    Rational mid = (lo + hi) / Rational(2);
    Rational probe = snap_down(inst, l_max, mid);
    if (probe <= lo) {
      probe = snap_up(inst, l_max, mid);
      if (probe >= hi) return {hi, std::move(*witness)};
    }
    if (auto asg = decide_makespan(inst, probe, options)) {
      hi = probe;
      witness = std::move(asg);
    } else {
      lo = probe;
    }
  }
  throw InternalInvariantError("candidate bisection failed to converge");
}

}  // namespace xsched
