#include "xsched/modip.hpp"

#include <algorithm>
#include <map>

namespace xsched::modip {

MachineClassification classify_machines(const PartitionInstance& inst) {
  Int p = inst.jobs().p_max();
  MachineClassification c;
  c.threshold = p * p * p * p;
  c.is_small.resize(inst.num_machines(), 0);
  for (std::size_t i = 0; i < inst.num_machines(); ++i) {
    if (inst.target(i) < c.threshold) {
      c.is_small[i] = 1;
      c.small_machines.push_back(i);
    } else {
      c.big_machines.push_back(i);
    }
  }
  return c;
}

PivotModel make_pivot_model(const PartitionInstance& inst, Int pivot) {
  return PivotModel{classify_machines(inst), pivot, inst.jobs().index_of_size(pivot)};
}

std::vector<MachineType> enumerate_types(const PartitionInstance& inst,
                                         const MachineClassification& classification, Int pivot) {
  if (pivot <= Int(0)) throw InvalidArgumentError("pivot must be positive");
  std::map<Int, std::vector<std::size_t>> small_groups, big_groups;
  for (std::size_t i = 0; i < inst.num_machines(); ++i) {
    if (classification.is_small[i])
      small_groups[inst.target(i)].push_back(i);
    else
      big_groups[floor_mod(inst.target(i), pivot)].push_back(i);
  }
  std::vector<MachineType> types;
  for (auto& [value, machines] : small_groups) types.push_back({true, value, std::move(machines)});
  for (auto& [value, machines] : big_groups) types.push_back({false, value, std::move(machines)});
  return types;
}

namespace {

// Emits all C >= 0 with sum sizes[k] * C[k] = target, ascending lexicographic.
// suffix_gcd[k] divides every sum the sizes k.. can form, pruning dead budgets.
void small_configs_rec(const std::vector<Int>& sizes, const std::vector<Int>& suffix_gcd,
                       std::size_t k, Int remaining, Configuration& current,
                       std::vector<Configuration>& out) {
  if (k + 1 == sizes.size()) {
    if (remaining % sizes[k] == Int(0)) {
      current[k] = remaining / sizes[k];
      out.push_back(current);
    }
    return;
  }
  if (remaining % suffix_gcd[k] != Int(0)) return;
  for (Int c(0); c * sizes[k] <= remaining; ++c) {
    current[k] = c;
    small_configs_rec(sizes, suffix_gcd, k + 1, remaining - c * sizes[k], current, out);
  }
  current[k] = Int(0);
}

// Emits all C in {0..a-1}^d with sum sizes[k] * C[k] congruent to rho mod a,
// ascending lexicographic.
void big_configs_rec(const std::vector<Int>& sizes, Int pivot, std::size_t k, Int partial,
                     Int rho, Configuration& current, std::vector<Configuration>& out) {
  if (k == sizes.size()) {
    if (floor_mod(partial, pivot) == rho) out.push_back(current);
    return;
  }
  for (Int c(0); c < pivot; ++c) {
    current[k] = c;
    big_configs_rec(sizes, pivot, k + 1, partial + c * sizes[k], rho, current, out);
  }
  current[k] = Int(0);
}

}  // namespace

std::vector<Configuration> enumerate_configs(const MachineType& type, const std::vector<Int>& sizes,
                                             Int pivot) {
  std::vector<Configuration> out;
  Configuration current(sizes.size(), Int(0));
  if (type.small) {
    std::vector<Int> suffix_gcd(sizes.size(), Int(0));
    for (std::size_t k = sizes.size(); k-- > 0;)
      suffix_gcd[k] = k + 1 < sizes.size() ? gcd(sizes[k], suffix_gcd[k + 1]) : sizes[k];
    small_configs_rec(sizes, suffix_gcd, 0, type.value, current, out);
  } else {
    big_configs_rec(sizes, pivot, 0, Int(0), floor_mod(type.value, pivot), current, out);
  }
  return out;
}

std::optional<ConfigIlpModel> build_config_ilp(const PartitionInstance& inst, Int pivot) {
  const JobProfile& jobs = inst.jobs();
  const std::size_t d = jobs.num_sizes();

  ConfigIlpModel model;
  model.pivot_model = make_pivot_model(inst, pivot);
  const MachineClassification& cls = model.pivot_model.classification;

  Int p = jobs.p_max();
  Int n_a = jobs.count_at(model.pivot_model.pivot_index);
  Int reserve = p * p * Int(cls.big_machines.size());
  Int pivot_rhs = n_a - reserve;
  // Constraint (3) reserves p_max^2 pivot jobs per big machine; without that
  // many pivot jobs the model cannot be satisfied for this pivot.
  if (pivot_rhs < Int(0)) return std::nullopt;

  model.types = enumerate_types(inst, cls, pivot);

  mcilp::McilpInstance& ilp = model.ilp;
  for (std::size_t ty = 0; ty < model.types.size(); ++ty) {
    std::vector<std::size_t> group;
    for (Configuration& config : enumerate_configs(model.types[ty], jobs.sizes(), pivot)) {
      std::vector<Int> column;
      column.reserve(d + 1);
      for (std::size_t k = 0; k < d; ++k) column.push_back(config[k]);
      // Pivot row: only small machines count against the reserve.
      column.push_back(model.types[ty].small ? config[model.pivot_model.pivot_index] : Int(0));
      group.push_back(ilp.columns.size());
      ilp.columns.push_back(std::move(column));
      ilp.objective.push_back(Int(0));
      model.configs.push_back(std::move(config));
      model.var_type.push_back(ty);
    }
    ilp.groups.push_back(std::move(group));
    ilp.cardinalities.push_back(model.types[ty].multiplicity());
  }
  for (std::size_t k = 0; k < d; ++k) ilp.rhs.push_back(jobs.count_at(k));
  ilp.rhs.push_back(pivot_rhs);
  return model;
}

Assignment decode(const std::vector<Int>& y, const ConfigIlpModel& model,
                  const PartitionInstance& inst) {
  const JobProfile& jobs = inst.jobs();
  const std::size_t d = jobs.num_sizes();
  if (y.size() != model.configs.size())
    throw InvalidArgumentError("solution vector does not match the model's variables");

  Assignment asg(inst.num_machines(), d);
  std::vector<std::size_t> next_machine(model.types.size(), 0);
  for (std::size_t v = 0; v < y.size(); ++v) {
    if (y[v] < Int(0)) throw InvalidArgumentError("solution entries must be nonnegative");
    const MachineType& type = model.types[model.var_type[v]];
    std::size_t& cursor = next_machine[model.var_type[v]];
    for (Int used(0); used < y[v]; ++used) {
      if (cursor >= type.machines.size())
        throw InvalidArgumentError("solution uses more machines than a type has");
      std::size_t machine = type.machines[cursor++];
      for (std::size_t k = 0; k < d; ++k) asg.set(machine, k, model.configs[v][k]);
    }
  }
  for (std::size_t ty = 0; ty < model.types.size(); ++ty)
    if (next_machine[ty] != model.types[ty].machines.size())
      throw InvalidArgumentError("solution leaves machines of a type unassigned");

  // Jobs not covered by any configuration are parked on one big machine; their
  // total size is divisible by the pivot (balance plus the congruences), so
  // that machine stays congruent.
  bool any_leftover = false;
  std::vector<Int> leftover(d, Int(0));
  for (std::size_t k = 0; k < d; ++k) {
    leftover[k] = jobs.count_at(k) - asg.column_sum(k);
    if (leftover[k] < Int(0))
      throw InvalidArgumentError("solution assigns size " + jobs.size_at(k).str() +
                                 " more often than it occurs");
    if (leftover[k] > Int(0)) any_leftover = true;
  }
  if (any_leftover) {
    const auto& big = model.pivot_model.classification.big_machines;
    if (big.empty())
      throw InternalInvariantError("unassigned jobs remain although every machine is small");
    for (std::size_t k = 0; k < d; ++k) asg.add(big[0], k, leftover[k]);
  }
  return asg;
}

void check_modip_solution(const PartitionInstance& inst, const PivotModel& model,
                          const Assignment& asg) {
  const JobProfile& jobs = inst.jobs();
  if (asg.num_machines() != inst.num_machines() || asg.num_sizes() != jobs.num_sizes())
    throw InvalidArgumentError("assignment shape does not match the instance");
  Int a = model.pivot;
  Int p = jobs.p_max();
  for (std::size_t i = 0; i < inst.num_machines(); ++i) {
    Int l = asg.load(jobs, i);
    if (model.classification.is_small[i]) {
      if (l != inst.target(i))
        throw InvalidArgumentError("small machine " + std::to_string(i) + " has load " + l.str() +
                                   ", expected exactly " + inst.target(i).str());
    } else if (floor_mod(l, a) != floor_mod(inst.target(i), a)) {
      throw InvalidArgumentError("big machine " + std::to_string(i) +
                                 " violates the congruence modulo " + a.str());
    }
  }
  Int big_pivot_jobs(0);
  for (std::size_t i : model.classification.big_machines)
    big_pivot_jobs += asg.at(i, model.pivot_index);
  Int reserve = p * p * Int(model.classification.big_machines.size());
  if (big_pivot_jobs < reserve)
    throw InvalidArgumentError("big machines hold " + big_pivot_jobs.str() +
                               " pivot jobs, the model requires at least " + reserve.str());
  for (std::size_t k = 0; k < jobs.num_sizes(); ++k)
    if (asg.column_sum(k) != jobs.count_at(k))
      throw InvalidArgumentError("size " + jobs.size_at(k).str() + " is not fully assigned");
}

}  // namespace xsched::modip
