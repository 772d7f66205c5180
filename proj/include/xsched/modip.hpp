#pragma once

#include <optional>
#include <vector>

#include "xsched/core.hpp"
#include "xsched/mcilp.hpp"

namespace xsched::modip {

/// Machine split by target magnitude: machine i is small iff T_i < p_max^4.
/// Small machines must be loaded exactly; big machines only up to congruence.
struct MachineClassification {
  Int threshold;  // p_max^4
  std::vector<std::size_t> small_machines;
  std::vector<std::size_t> big_machines;
  std::vector<char> is_small;  // per machine
};

MachineClassification classify_machines(const PartitionInstance& inst);

/// Classification plus the chosen pivot size a.
struct PivotModel {
  MachineClassification classification;
  Int pivot;
  std::size_t pivot_index;  // index of the pivot in the sorted distinct sizes
};

PivotModel make_pivot_model(const PartitionInstance& inst, Int pivot);

/// Group of interchangeable machines: small machines sharing an exact target,
/// or big machines sharing a residue of the target modulo the pivot.
/// `machines` lists original machine indices in ascending order.
struct MachineType {
  bool small;
  Int value;  // exact target for small types, residue mod pivot for big types
  std::vector<std::size_t> machines;

  Int multiplicity() const { return Int(machines.size()); }
};

/// Deterministic type list: small types by ascending target, then big types by
/// ascending residue.
std::vector<MachineType> enumerate_types(const PartitionInstance& inst,
                                         const MachineClassification& classification, Int pivot);

/// Per-size job counts a single machine of a type may receive.
using Configuration = std::vector<Int>;

/// All configurations of a type, in ascending lexicographic order.
/// Small type with target T: all C >= 0 with sum p_k C_k = T.
/// Big type with residue rho: all C in {0..a-1}^d with sum p_k C_k = rho (mod a);
/// entries above a-1 are redundant because removing a jobs of one size keeps
/// the congruence.
std::vector<Configuration> enumerate_configs(const MachineType& type, const std::vector<Int>& sizes,
                                             Int pivot);

/// Configuration ILP in inequality form: one variable per (type, configuration)
/// counting machines of that type using that configuration, one group per type
/// with cardinality = type multiplicity, one row per size capping total use at
/// the job count, and a final pivot row capping the pivot-size jobs placed on
/// small machines at n_a - p_max^2 * |B|.
struct ConfigIlpModel {
  mcilp::McilpInstance ilp;
  PivotModel pivot_model;
  std::vector<MachineType> types;
  std::vector<Configuration> configs;    // per ILP variable
  std::vector<std::size_t> var_type;     // per ILP variable
};

/// Returns nullopt when n_a - p_max^2 * |B| < 0: no assignment can reserve
/// p_max^2 pivot jobs per big machine, so this pivot is infeasible outright.
std::optional<ConfigIlpModel> build_config_ilp(const PartitionInstance& inst, Int pivot);

/// Expands ILP variable values into a per-machine assignment. Machines of a
/// type receive its configurations in variable order, machines in ascending
/// index. Jobs no configuration covers are parked on the lowest-indexed big
/// machine; their total size is always divisible by the pivot, so the
/// congruence survives.
Assignment decode(const std::vector<Int>& y, const ConfigIlpModel& model,
                  const PartitionInstance& inst);

/// Verifies the relaxed load conditions: small machines loaded exactly, big
/// machines congruent mod pivot, at least p_max^2 * |B| pivot jobs on big
/// machines, every job assigned. Throws InvalidArgumentError when violated.
void check_modip_solution(const PartitionInstance& inst, const PivotModel& model,
                          const Assignment& asg);

}  // namespace xsched::modip
