#include "xsched/oracle.hpp"

#include <algorithm>

namespace xsched::oracle {
namespace {

struct Budget {
  long long remaining;
  void spend() {
    if (--remaining < 0) throw BudgetExceededError("oracle budget exceeded");
  }
};

// Distributes counts[k..] over machines; rem[i] is machine i's remaining
// target. Jobs are handled largest size first for earlier pruning.
bool partition_dfs(const PartitionInstance& inst, std::size_t k, std::size_t machine,
                   Int count_left, std::vector<Int>& rem, Assignment& asg, Budget& budget) {
  budget.spend();
  const JobProfile& jobs = inst.jobs();
  if (k == jobs.num_sizes()) {
    for (const Int& r : rem)
      if (r != Int(0)) return false;
    return true;
  }
  std::size_t size_idx = jobs.num_sizes() - 1 - k;
  Int p = jobs.size_at(size_idx);
  if (machine + 1 == rem.size()) {
    // Last machine takes the remainder of this size class if it fits exactly.
    if (rem[machine] < count_left * p) return false;
    asg.set(machine, size_idx, count_left);
    rem[machine] -= count_left * p;
    if (partition_dfs(inst, k + 1, 0, k + 1 < jobs.num_sizes() ? jobs.count_at(jobs.num_sizes() - 2 - k) : Int(0),
                      rem, asg, budget))
      return true;
    rem[machine] += count_left * p;
    asg.set(machine, size_idx, Int(0));
    return false;
  }
  Int q_max = min(count_left, rem[machine] / p);
  for (Int q(0); q <= q_max; ++q) {
    asg.set(machine, size_idx, q);
    rem[machine] -= q * p;
    if (partition_dfs(inst, k, machine + 1, count_left - q, rem, asg, budget)) return true;
    rem[machine] += q * p;
    asg.set(machine, size_idx, Int(0));
  }
  return false;
}

struct MakespanSearch {
  const SchedulingInstance& inst;
  std::vector<Int> loads;
  Rational best;
  Budget budget;

  // Current partial makespan over machines with any load.
  Rational partial() const {
    Rational v(0);
    for (std::size_t i = 0; i < loads.size(); ++i) {
      Rational r(loads[i], inst.speed(i));
      if (r > v) v = r;
    }
    return v;
  }

  void dfs(std::size_t k, std::size_t machine, Int count_left) {
    budget.spend();
    const JobProfile& jobs = inst.jobs();
    if (partial() >= best) return;
    if (k == jobs.num_sizes()) {
      Rational v = partial();
      if (v < best) best = v;
      return;
    }
    std::size_t size_idx = jobs.num_sizes() - 1 - k;
    Int p = jobs.size_at(size_idx);
    if (machine + 1 == loads.size()) {
      loads[machine] += count_left * p;
      dfs(k + 1, 0, k + 1 < jobs.num_sizes() ? jobs.count_at(jobs.num_sizes() - 2 - k) : Int(0));
      loads[machine] -= count_left * p;
      return;
    }
    for (Int q(0); q <= count_left; ++q) {
      loads[machine] += q * p;
      dfs(k, machine + 1, count_left - q);
      loads[machine] -= q * p;
    }
  }
};

struct McilpSearch {
  const mcilp::McilpInstance& inst;
  mcilp::Relation relation;
  std::vector<Int> x;
  std::vector<Int> ax;
  Int objective{0};
  bool found = false;
  std::vector<Int> best_x;
  Int best_objective{0};
  Budget budget;

  void take(std::size_t col, Int q) {
    x[col] += q;
    objective += q * inst.objective[col];
    for (std::size_t j = 0; j < inst.num_rows(); ++j) ax[j] += q * inst.columns[col][j];
  }
  void untake(std::size_t col, Int q) {
    x[col] -= q;
    objective -= q * inst.objective[col];
    for (std::size_t j = 0; j < inst.num_rows(); ++j) ax[j] -= q * inst.columns[col][j];
  }

  // Distributes group g's cardinality over its columns starting at position pos.
  void dfs(std::size_t g, std::size_t pos, Int left) {
    budget.spend();
    if (g == inst.groups.size()) {
      for (std::size_t j = 0; j < inst.num_rows(); ++j) {
        if (relation == mcilp::Relation::Equality ? ax[j] != inst.rhs[j] : ax[j] > inst.rhs[j]) return;
      }
      if (!found || objective > best_objective) {
        found = true;
        best_objective = objective;
        best_x = x;
      }
      return;
    }
    const auto& group = inst.groups[g];
    if (group.empty()) {
      if (left == Int(0)) dfs(g + 1, 0, g + 1 < inst.groups.size() ? inst.cardinalities[g + 1] : Int(0));
      return;
    }
    if (pos + 1 == group.size()) {
      take(group[pos], left);
      dfs(g + 1, 0, g + 1 < inst.groups.size() ? inst.cardinalities[g + 1] : Int(0));
      untake(group[pos], left);
      return;
    }
    for (Int q(0); q <= left; ++q) {
      take(group[pos], q);
      dfs(g, pos + 1, left - q);
      untake(group[pos], q);
    }
  }
};

}  // namespace

std::optional<Assignment> brute_partition(const PartitionInstance& inst, long long budget) {
  const JobProfile& jobs = inst.jobs();
  Assignment asg(inst.num_machines(), jobs.num_sizes());
  std::vector<Int> rem = inst.targets();
  Budget b{budget};
  if (partition_dfs(inst, 0, 0, jobs.count_at(jobs.num_sizes() - 1), rem, asg, b)) return asg;
  return std::nullopt;
}

Rational brute_makespan(const SchedulingInstance& inst, long long budget) {
  // Everything on the fastest machine is an upper bound that any schedule meets.
  Int s_max(0);
  for (const Int& s : inst.speeds()) s_max = max(s_max, s);
  MakespanSearch search{inst,
                        std::vector<Int>(inst.num_machines(), Int(0)),
                        Rational(inst.jobs().total_size(), s_max) + Rational(1),
                        Budget{budget}};
  const JobProfile& jobs = inst.jobs();
  search.dfs(0, 0, jobs.count_at(jobs.num_sizes() - 1));
  return search.best;
}

std::optional<mcilp::McilpSolution> brute_mcilp(const mcilp::McilpInstance& inst,
                                                mcilp::Relation relation, long long budget) {
  inst.validate();
  McilpSearch search{inst,
                     relation,
                     std::vector<Int>(inst.num_cols(), Int(0)),
                     std::vector<Int>(inst.num_rows(), Int(0)),
                     Int(0),
                     false,
                     {},
                     Int(0),
                     Budget{budget}};
  search.dfs(0, 0, inst.groups.empty() ? Int(0) : inst.cardinalities[0]);
  if (!search.found) return std::nullopt;
  return mcilp::McilpSolution{std::move(search.best_x), search.best_objective};
}

}  // namespace xsched::oracle
