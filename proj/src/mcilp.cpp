#include "xsched/mcilp.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "xsched/errors.hpp"

namespace xsched::mcilp {
namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Int>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const Int& x : v) h = h * 0x100000001b3ULL ^ hash_value(x);
    return h;
  }
};

struct DistinctColumn {
  std::vector<Int> vec;
  Int weight;        // max objective among columns with this vector
  std::size_t col;   // smallest index among those attaining the max
};

// Collapses a group's columns by identical column vector. The edge weight for a
// vector is the best objective it can carry; reconstruction uses the smallest
// column index attaining it.
std::vector<DistinctColumn> distinct_columns(const McilpInstance& inst, const std::vector<std::size_t>& group) {
  std::vector<DistinctColumn> out;
  for (std::size_t col : group) {
    const auto& vec = inst.columns[col];
    auto it = std::find_if(out.begin(), out.end(), [&](const DistinctColumn& d) { return d.vec == vec; });
    if (it == out.end()) {
      out.push_back({vec, inst.objective[col], col});
    } else if (inst.objective[col] > it->weight) {
      it->weight = inst.objective[col];
      it->col = col;
    }
  }
  std::sort(out.begin(), out.end(), [](const DistinctColumn& a, const DistinctColumn& b) { return a.col < b.col; });
  return out;
}

struct Entry {
  std::vector<Int> state;
  Int obj;
  long long pred;
  long long col;  // column index taken on the edge into this entry, -1 at the root
};

}  // namespace

Int McilpInstance::delta() const {
  Int d(1);
  for (const auto& col : columns)
    for (const Int& v : col) d = max(d, abs(v));
  return d;
}

Int McilpInstance::total_cardinality() const {
  Int t(0);
  for (const Int& c : cardinalities) t += c;
  return t;
}

void McilpInstance::validate() const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].size() != rhs.size())
      throw InvalidArgumentError("column " + std::to_string(i) + " has " +
                                 std::to_string(columns[i].size()) + " rows, expected " +
                                 std::to_string(rhs.size()));
  if (objective.size() != columns.size())
    throw InvalidArgumentError("objective length does not match the number of columns");
  if (groups.size() != cardinalities.size())
    throw InvalidArgumentError("groups and cardinalities must have equal length");
  std::vector<char> seen(columns.size(), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (cardinalities[g] < Int(0))
      throw InvalidArgumentError("cardinalities[" + std::to_string(g) + "] must be nonnegative");
    for (std::size_t col : groups[g]) {
      if (col >= columns.size())
        throw InvalidArgumentError("group " + std::to_string(g) + " references column " +
                                   std::to_string(col) + " out of range");
      if (seen[col])
        throw InvalidArgumentError("column " + std::to_string(col) + " appears in two groups");
      seen[col] = 1;
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw InvalidArgumentError("column " + std::to_string(i) + " belongs to no group");
}

std::vector<Breakpoint> build_breakpoints(const std::vector<std::vector<std::size_t>>& groups,
                                          const std::vector<Int>& cardinalities) {
  if (groups.size() != cardinalities.size())
    throw InvalidArgumentError("groups and cardinalities must have equal length");
  Int t(0);
  for (const Int& c : cardinalities) {
    if (c < Int(0)) throw InvalidArgumentError("cardinalities must be nonnegative");
    t += c;
  }
  if (t > Int(1'000'000'000))
    throw InvalidArgumentError("total cardinality " + t.str() + " exceeds the supported schedule size");
  std::vector<Breakpoint> schedule;
  schedule.reserve(t.to_size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (Int i(1); i <= cardinalities[g]; ++i) schedule.push_back({g, i, cardinalities[g]});
  std::sort(schedule.begin(), schedule.end(), [](const Breakpoint& a, const Breakpoint& b) {
    Int lhs = a.numer * b.denom;
    Int rhs = b.numer * a.denom;
    if (lhs != rhs) return lhs < rhs;
    return a.group < b.group;
  });
  return schedule;
}

std::optional<McilpSolution> solve_equality(const McilpInstance& inst, const McilpSolveOptions& options) {
  inst.validate();
  const std::size_t r = inst.num_rows();
  const std::size_t n = inst.num_cols();

  for (std::size_t g = 0; g < inst.groups.size(); ++g)
    if (inst.cardinalities[g] > Int(0) && inst.groups[g].empty()) return std::nullopt;

  auto schedule = build_breakpoints(inst.groups, inst.cardinalities);
  const std::size_t t = schedule.size();

  Int radius = Int(4) * Int(r) * inst.delta() * Int(inst.groups.size());

  // Per-group distinct columns and per-row column-entry extremes. Groups with
  // zero cardinality never occur in the schedule and are skipped.
  std::vector<std::vector<DistinctColumn>> cols_of(inst.groups.size());
  std::vector<std::vector<Int>> row_min(inst.groups.size()), row_max(inst.groups.size());
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    if (inst.cardinalities[g] == Int(0)) continue;
    cols_of[g] = distinct_columns(inst, inst.groups[g]);
    row_min[g].assign(r, Int(0));
    row_max[g].assign(r, Int(0));
    for (std::size_t j = 0; j < r; ++j) {
      Int lo = cols_of[g][0].vec[j], hi = lo;
      for (const auto& d : cols_of[g]) {
        lo = min(lo, d.vec[j]);
        hi = max(hi, d.vec[j]);
      }
      row_min[g][j] = lo;
      row_max[g][j] = hi;
    }
  }

  // suffix_min/max[j]: least/greatest contribution the remaining layers can
  // still add to row j. A prefix state can only complete to b if
  // b - suffix_max <= state <= b - suffix_min holds row-wise; every full
  // path's prefixes satisfy this, so the filter never loses a solution.
  std::vector<Int> suffix_min(r, Int(0)), suffix_max(r, Int(0));
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    if (inst.cardinalities[g] == Int(0)) continue;
    for (std::size_t j = 0; j < r; ++j) {
      suffix_min[j] += inst.cardinalities[g] * row_min[g][j];
      suffix_max[j] += inst.cardinalities[g] * row_max[g][j];
    }
  }

  std::vector<Entry> arena;
  arena.push_back({std::vector<Int>(r, Int(0)), Int(0), -1, -1});
  std::unordered_map<std::vector<Int>, long long, VecHash> layer;
  layer.emplace(arena[0].state, 0);

  if (options.stats) {
    options.stats->layers = static_cast<long long>(t);
    options.stats->peak_layer_states = 1;
  }

  std::vector<Int> candidate(r, Int(0));
  for (std::size_t k = 1; k <= t; ++k) {
    const Breakpoint& bp = schedule[k - 1];
    std::vector<Int> win_lo(r, Int(0)), win_hi(r, Int(0));
    for (std::size_t j = 0; j < r; ++j) {
      suffix_min[j] -= row_min[bp.group][j];
      suffix_max[j] -= row_max[bp.group][j];
      win_lo[j] = inst.rhs[j] - suffix_max[j];
      win_hi[j] = inst.rhs[j] - suffix_min[j];
    }
    Int ball_bound = radius * bp.denom;

    std::vector<long long> prev;
    prev.reserve(layer.size());
    for (const auto& [state, idx] : layer) prev.push_back(idx);
    layer.clear();

    for (long long eidx : prev) {
      for (const auto& dcol : cols_of[bp.group]) {
        bool keep = true;
        for (std::size_t j = 0; j < r; ++j) {
          candidate[j] = arena[eidx].state[j] + dcol.vec[j];
          if (candidate[j] < win_lo[j] || candidate[j] > win_hi[j]) {
            keep = false;
            if (options.stats) ++options.stats->window_rejections;
            break;
          }
        }
        if (!keep) continue;
        for (std::size_t j = 0; j < r; ++j) {
          if (abs(bp.denom * candidate[j] - bp.numer * inst.rhs[j]) > ball_bound) {
            keep = false;
            if (options.stats) ++options.stats->ball_rejections;
            break;
          }
        }
        if (!keep) continue;
        Int cand_obj = arena[eidx].obj + dcol.weight;
        auto it = layer.find(candidate);
        if (it == layer.end()) {
          if (options.auditor) options.auditor(k, bp, candidate);
          arena.push_back({candidate, cand_obj, eidx, static_cast<long long>(dcol.col)});
          layer.emplace(candidate, static_cast<long long>(arena.size() - 1));
        } else {
          // Canonical winner per state: best objective, then smallest column
          // index, then lexicographically smallest predecessor state. Keeps the
          // result independent of hash iteration order.
          Entry& cur = arena[static_cast<std::size_t>(it->second)];
          bool better = cand_obj > cur.obj;
          if (!better && cand_obj == cur.obj) {
            if (static_cast<long long>(dcol.col) < cur.col)
              better = true;
            else if (static_cast<long long>(dcol.col) == cur.col &&
                     arena[eidx].state < arena[static_cast<std::size_t>(cur.pred)].state)
              better = true;
          }
          if (better) {
            cur.obj = cand_obj;
            cur.pred = eidx;
            cur.col = static_cast<long long>(dcol.col);
          }
        }
      }
    }
    if (layer.empty()) return std::nullopt;
    if (options.stats) {
      options.stats->peak_layer_states =
          std::max(options.stats->peak_layer_states, static_cast<long long>(layer.size()));
      options.stats->total_states = static_cast<long long>(arena.size() - 1);
    }
  }

  auto it = layer.find(inst.rhs);
  if (it == layer.end()) return std::nullopt;

  McilpSolution sol;
  sol.x.assign(n, Int(0));
  sol.objective = arena[static_cast<std::size_t>(it->second)].obj;
  for (long long e = it->second; arena[static_cast<std::size_t>(e)].pred >= 0;
       e = arena[static_cast<std::size_t>(e)].pred)
    sol.x[static_cast<std::size_t>(arena[static_cast<std::size_t>(e)].col)] += 1;

  // Post-hoc self check: the reconstructed x must reproduce b, the group
  // cardinalities, and the tracked objective.
  std::vector<Int> ax(r, Int(0));
  Int obj(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) ax[j] += sol.x[i] * inst.columns[i][j];
    obj += sol.x[i] * inst.objective[i];
  }
  if (ax != inst.rhs) throw InternalInvariantError("reconstructed solution misses the right-hand side");
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    Int used(0);
    for (std::size_t col : inst.groups[g]) used += sol.x[col];
    if (used != inst.cardinalities[g])
      throw InternalInvariantError("reconstructed solution violates a group cardinality");
  }
  if (obj != sol.objective) throw InternalInvariantError("objective bookkeeping mismatch");
  return sol;
}

McilpSolution InequalityReduction::restore(McilpSolution reduced) const {
  reduced.x.resize(original_cols);
  return reduced;
}

InequalityReduction reduce_inequalities(const McilpInstance& inst) {
  inst.validate();
  Int delta = inst.delta();
  Int t = inst.total_cardinality();
  Int slack_card = Int(2) * t * delta;

  InequalityReduction red;
  red.original_cols = inst.num_cols();
  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    // Any solution satisfies (A x)_j <= delta * t, so such a row never binds.
    if (inst.rhs[j] < delta * t) red.kept_rows.push_back(j);
  }

  McilpInstance& eq = red.equality;
  eq.columns.reserve(inst.num_cols() + 2 * red.kept_rows.size());
  for (const auto& col : inst.columns) {
    std::vector<Int> kept;
    kept.reserve(red.kept_rows.size());
    for (std::size_t j : red.kept_rows) kept.push_back(col[j]);
    eq.columns.push_back(std::move(kept));
  }
  eq.objective = inst.objective;
  for (std::size_t j : red.kept_rows) eq.rhs.push_back(inst.rhs[j]);
  eq.groups = inst.groups;
  eq.cardinalities = inst.cardinalities;

  // Row j becomes an equality by absorbing its slack, any value below
  // 2 t delta, in binary: bit i is a cardinality-1 group choosing between a
  // column carrying 2^i in row j and an all-zero partner. The logarithmic
  // group count keeps the DP schedule short where a single group of
  // cardinality 2 t delta would add that many layers.
  for (std::size_t idx = 0; idx < red.kept_rows.size(); ++idx) {
    for (Int bit(1); bit < slack_card; bit *= Int(2)) {
      std::vector<Int> slack(red.kept_rows.size(), Int(0));
      slack[idx] = bit;
      eq.columns.push_back(std::move(slack));
      eq.columns.push_back(std::vector<Int>(red.kept_rows.size(), Int(0)));
      eq.objective.push_back(Int(0));
      eq.objective.push_back(Int(0));
      eq.groups.push_back({eq.columns.size() - 2, eq.columns.size() - 1});
      eq.cardinalities.push_back(Int(1));
    }
  }
  return red;
}

std::optional<McilpSolution> solve_inequality(const McilpInstance& inst, const McilpSolveOptions& options) {
  InequalityReduction red = reduce_inequalities(inst);
  auto sol = solve_equality(red.equality, options);
  if (!sol) return std::nullopt;
  return red.restore(std::move(*sol));
}

}  // namespace xsched::mcilp
