#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "xsched/ints.hpp"

namespace xsched::mcilp {

enum class Relation { Equality, Inequality };

/// Integer program with multi-choice structure:
///   maximize c^T x  subject to  A x (= or <=) b,  x >= 0 integral,
///   and for every group S: sum of x_i over i in S equals its cardinality.
/// Groups must be disjoint and cover all columns; cardinalities are >= 0.
/// Whether rows are equalities or inequalities is decided by the operation
/// applied (solve_equality vs solve_inequality), not stored in the instance.
struct McilpInstance {
  // columns[i] is the i-th column of A (length = number of rows).
  std::vector<std::vector<Int>> columns;
  std::vector<Int> rhs;
  std::vector<Int> objective;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<Int> cardinalities;

  std::size_t num_rows() const { return rhs.size(); }
  std::size_t num_cols() const { return columns.size(); }

  /// max(1, max |A[j][i]|); the floor keeps derived bounds well-defined for
  /// all-zero matrices.
  Int delta() const;
  /// Sum of all group cardinalities: the number of increments any solution makes.
  Int total_cardinality() const;

  /// Throws InvalidArgumentError on structural problems (column length mismatch,
  /// groups not a disjoint cover, negative cardinality).
  void validate() const;
};

struct McilpSolution {
  std::vector<Int> x;
  Int objective;
};

/// One scheduled increment: group `group` takes its `numer`-th step, at
/// fraction numer/denom of that group's cardinality.
struct Breakpoint {
  std::size_t group;
  Int numer;
  Int denom;
};

/// Merged schedule of fractions i/t_S over all groups, sorted ascending with
/// ties broken by ascending group index. Fractions are compared exactly by
/// cross multiplication.
std::vector<Breakpoint> build_breakpoints(const std::vector<std::vector<std::size_t>>& groups,
                                          const std::vector<Int>& cardinalities);

struct McilpStats {
  long long layers = 0;
  long long peak_layer_states = 0;
  long long total_states = 0;
  long long ball_rejections = 0;
  long long window_rejections = 0;
};

/// Test hook: called for every state actually inserted into a layer, with the
/// layer number, the breakpoint driving it, and the state vector.
using StateAuditor =
    std::function<void(std::size_t layer, const Breakpoint& bp, const std::vector<Int>& state)>;

struct McilpSolveOptions {
  McilpStats* stats = nullptr;
  StateAuditor auditor;
};

/// Exact solver for the equality form (A x = b). Layered dynamic program over
/// the breakpoint schedule; layer k keeps only states b' passing the exact
/// ball test |t_S * b'_j - i * b_j| <= 4 r delta |P| * t_S for its breakpoint
/// i/t_S. Returns the optimum or nullopt if infeasible. Deterministic.
std::optional<McilpSolution> solve_equality(const McilpInstance& inst,
                                            const McilpSolveOptions& options = {});

/// Equality instance produced from an inequality instance, plus what is needed
/// to map solutions back.
struct InequalityReduction {
  McilpInstance equality;
  std::size_t original_cols;
  std::vector<std::size_t> kept_rows;

  /// Drops slack columns; the objective is unchanged because slacks carry 0.
  McilpSolution restore(McilpSolution reduced) const;
};

/// Rewrites A x <= b as an equality instance: rows with b_j >= delta * t can
/// never be violated and are dropped; every surviving row j gains slack
/// variables covering any deficit below 2 * t * delta, decomposed in binary:
/// one cardinality-1 group per bit, choosing between a column carrying 2^i in
/// row j and an all-zero partner. Turns each kept row into an equality while
/// adding only logarithmically many DP layers.
InequalityReduction reduce_inequalities(const McilpInstance& inst);

/// Exact solver for the inequality form: reduce, solve, map back.
std::optional<McilpSolution> solve_inequality(const McilpInstance& inst,
                                              const McilpSolveOptions& options = {});

}  // namespace xsched::mcilp
