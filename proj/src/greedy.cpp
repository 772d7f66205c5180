#include "xsched/greedy.hpp"

namespace xsched::greedy {
namespace {

Int pool_volume(const ReconstructionState& s) {
  const JobProfile& jobs = s.inst->jobs();
  Int v = s.pivot_pool * s.model->pivot;
  for (std::size_t k = 0; k < jobs.num_sizes(); ++k)
    v += s.bundle_pool[k] * s.model->pivot * jobs.size_at(k);
  return v;
}

// Conservation: loads plus pooled volume always add up to the target total.
void check_conservation(const ReconstructionState& s) {
  Int total(0);
  for (const Int& l : s.loads) total += l;
  if (total + pool_volume(s) != s.inst->jobs().total_size())
    throw InternalInvariantError("job volume was lost between loads and pools");
  if (s.options.stats) ++s.options.stats->conservation_checks;
}

// Congruence: a big machine's load stays congruent to its target mod the pivot.
void check_congruence(const ReconstructionState& s, std::size_t machine) {
  Int a = s.model->pivot;
  if (floor_mod(s.loads[machine], a) != floor_mod(s.inst->target(machine), a))
    throw InternalInvariantError("machine " + std::to_string(machine) +
                                 " lost the congruence modulo " + a.str());
  if (s.loads[machine] > s.inst->target(machine))
    throw InternalInvariantError("machine " + std::to_string(machine) + " exceeds its target");
  if (s.options.stats) ++s.options.stats->congruence_checks;
}

// Some big machine must have p_max^2 free capacity while bundles remain;
// otherwise bundle placement could wedge.
void check_witness(const ReconstructionState& s) {
  Int p = s.inst->jobs().p_max();
  for (std::size_t i : s.model->classification.big_machines)
    if (s.loads[i] <= s.inst->target(i) - p * p) {
      if (s.options.stats) ++s.options.stats->witness_checks;
      return;
    }
  throw InternalInvariantError("no big machine can take the next bundle");
}

void record(ReconstructionState& s, int phase, std::size_t machine, Int size, Int count) {
  if (s.options.trace) s.options.trace->push_back({phase, machine, size, count});
  if (s.options.stats) ++s.options.stats->placements;
}

Int bundle_entries(const ReconstructionState& s) {
  Int n(0);
  for (const Int& b : s.bundle_pool)
    if (b > Int(0)) ++n;
  return n;
}

}  // namespace

ReconstructionState make_state(const PartitionInstance& inst, const modip::PivotModel& model,
                               Assignment z, const ReconstructOptions& options) {
  ReconstructionState s{&inst, &model, std::move(z), {}, Int(0),
                        std::vector<Int>(inst.jobs().num_sizes(), Int(0)), options};
  s.loads.reserve(inst.num_machines());
  for (std::size_t i = 0; i < inst.num_machines(); ++i) s.loads.push_back(s.z.load(inst.jobs(), i));
  return s;
}

void phase1_strip(ReconstructionState& state) {
  const JobProfile& jobs = state.inst->jobs();
  const Int a = state.model->pivot;
  const std::size_t a_idx = state.model->pivot_index;
  for (std::size_t i : state.model->classification.big_machines) {
    Int pivots = state.z.at(i, a_idx);
    if (pivots > Int(0)) {
      state.z.set(i, a_idx, Int(0));
      state.loads[i] -= pivots * a;
      state.pivot_pool += pivots;
      record(state, 1, i, a, pivots);
    }
    for (std::size_t k = 0; k < jobs.num_sizes(); ++k) {
      if (k == a_idx) continue;
      Int bundles = state.z.at(i, k) / a;
      if (bundles == Int(0)) continue;
      Int moved = bundles * a;
      state.z.add(i, k, -moved);
      state.loads[i] -= moved * jobs.size_at(k);
      state.bundle_pool[k] += bundles;
      record(state, 1, i, jobs.size_at(k), moved);
    }
    if (state.options.check_invariants) check_congruence(state, i);
  }
  if (state.options.check_invariants) {
    check_conservation(state);
    Int cap = (Int(jobs.num_sizes()) - 1) * (a - 1);
    for (std::size_t i : state.model->classification.big_machines) {
      if (state.z.job_count(i) > cap)
        throw InternalInvariantError("machine " + std::to_string(i) + " kept more than (d-1)(a-1) jobs");
      if (state.loads[i] >= state.inst->target(i))
        throw InternalInvariantError("machine " + std::to_string(i) + " was not stripped below its target");
    }
  }
}

void phase2_place_bundles(ReconstructionState& state) {
  const JobProfile& jobs = state.inst->jobs();
  const Int a = state.model->pivot;
  const std::size_t a_idx = state.model->pivot_index;

  Int remaining(0);
  for (const Int& b : state.bundle_pool) remaining += b;

  // A single sweep suffices: a machine's slack never grows, so whatever does
  // not fit now will not fit later. The cap turns a wedged loop into a
  // detected bug instead of a hang.
  Int sweep_cap = Int(state.inst->num_machines()) * Int(jobs.num_sizes()) + bundle_entries(state) + 1;
  Int sweeps(0);
  while (remaining > Int(0)) {
    if (++sweeps > sweep_cap) throw InternalInvariantError("bundle placement did not converge");
    bool progressed = false;
    for (std::size_t i : state.model->classification.big_machines) {
      for (std::size_t k = jobs.num_sizes(); k-- > 0;) {
        if (k == a_idx || state.bundle_pool[k] == Int(0)) continue;
        if (state.options.check_invariants) check_witness(state);
        Int bundle_size = a * jobs.size_at(k);
        Int batch = min(state.bundle_pool[k], (state.inst->target(i) - state.loads[i]) / bundle_size);
        if (batch == Int(0)) continue;
        Int moved = batch * a;
        state.z.add(i, k, moved);
        state.loads[i] += batch * bundle_size;
        state.bundle_pool[k] -= batch;
        remaining -= batch;
        progressed = true;
        record(state, 2, i, jobs.size_at(k), moved);
        if (state.options.check_invariants) {
          check_congruence(state, i);
          check_conservation(state);
        }
      }
    }
    if (!progressed && remaining > Int(0))
      throw InternalInvariantError("bundles remain but no big machine can host one");
  }
}

void phase3_place_pivots(ReconstructionState& state) {
  const Int a = state.model->pivot;
  const std::size_t a_idx = state.model->pivot_index;

  Int sweep_cap = Int(state.inst->num_machines()) + Int(2);
  Int sweeps(0);
  while (state.pivot_pool > Int(0)) {
    if (++sweeps > sweep_cap) throw InternalInvariantError("pivot placement did not converge");
    bool progressed = false;
    for (std::size_t i : state.model->classification.big_machines) {
      if (state.pivot_pool == Int(0)) break;
      Int slack = state.inst->target(i) - state.loads[i];
      if (state.options.check_invariants && floor_mod(slack, a) != Int(0))
        throw InternalInvariantError("machine " + std::to_string(i) +
                                     " has slack not divisible by the pivot");
      Int batch = min(state.pivot_pool, slack / a);
      if (batch == Int(0)) continue;
      state.z.add(i, a_idx, batch);
      state.loads[i] += batch * a;
      state.pivot_pool -= batch;
      progressed = true;
      record(state, 3, i, a, batch);
      if (state.options.check_invariants) {
        check_congruence(state, i);
        check_conservation(state);
      }
    }
    if (!progressed && state.pivot_pool > Int(0))
      throw InternalInvariantError("pivot jobs remain but every big machine is full");
  }
  for (std::size_t i = 0; i < state.inst->num_machines(); ++i)
    if (state.loads[i] != state.inst->target(i))
      throw InternalInvariantError("machine " + std::to_string(i) + " ended at load " +
                                   state.loads[i].str() + " instead of " +
                                   state.inst->target(i).str());
}

Assignment reconstruct(const PartitionInstance& inst, const modip::PivotModel& model, Assignment z,
                       const ReconstructOptions& options) {
  modip::check_modip_solution(inst, model, z);
  ReconstructionState state = make_state(inst, model, std::move(z), options);
  phase1_strip(state);
  phase2_place_bundles(state);
  phase3_place_pivots(state);
  VerificationReport report = verify_partition(inst, state.z);
  if (!report.pass) throw InternalInvariantError("reconstruction produced an invalid partition");
  return std::move(state.z);
}

}  // namespace xsched::greedy
