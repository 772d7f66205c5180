#include "xsched/partition.hpp"

#include <algorithm>

#include "xsched/mcilp.hpp"

namespace xsched {

std::optional<Assignment> solve_partition(const PartitionInstance& inst,
                                          const PartitionSolveOptions& options) {
  std::vector<Int> pivots;
  if (options.forced_pivot) {
    if (!inst.jobs().has_size(*options.forced_pivot))
      throw InvalidArgumentError("pivot " + options.forced_pivot->str() +
                                 " is not a size of this instance");
    pivots.push_back(*options.forced_pivot);
  } else {
    pivots = inst.jobs().sizes();  // already ascending
  }

  for (Int pivot : pivots) {
    if (options.stats) ++options.stats->pivots_tried;
    auto model = modip::build_config_ilp(inst, pivot);
    if (!model) continue;  // pivot-infeasible before any ILP work

    mcilp::McilpStats mstats;
    mcilp::McilpSolveOptions msolve;
    msolve.stats = &mstats;
    auto solution = mcilp::solve_inequality(model->ilp, msolve);
    if (options.stats) {
      ++options.stats->ilp_solves;
      options.stats->dp_layers = std::max(options.stats->dp_layers, mstats.layers);
      options.stats->dp_states_peak = std::max(options.stats->dp_states_peak, mstats.peak_layer_states);
    }
    if (!solution) continue;

    Assignment relaxed = modip::decode(solution->x, *model, inst);
    greedy::ReconstructOptions ropts;
    ropts.check_invariants = options.check_invariants;
    ropts.trace = options.trace;
    if (options.trace) options.trace->clear();  // keep only the successful pivot's trace
    Assignment result = greedy::reconstruct(inst, model->pivot_model, std::move(relaxed), ropts);
    return result;
  }
  return std::nullopt;
}

}  // namespace xsched
