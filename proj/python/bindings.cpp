#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xsched/core.hpp"
#include "xsched/errors.hpp"
#include "xsched/generator.hpp"
#include "xsched/makespan.hpp"
#include "xsched/mcilp.hpp"
#include "xsched/oracle.hpp"
#include "xsched/partition.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// Python int <-> checked 128-bit integer, bridged through decimal strings so
// values beyond 64 bits survive the crossing in both directions.
template <>
struct type_caster<xsched::Int> {
  PYBIND11_TYPE_CASTER(xsched::Int, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    std::string text = py::str(src);
    auto parsed = xsched::Int::parse(text);
    if (!parsed) throw py::value_error("integer out of the supported 128-bit range: " + text);
    value = *parsed;
    return true;
  }

  static handle cast(const xsched::Int& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

using Rows = std::vector<std::vector<xsched::Int>>;

xsched::PartitionInstance make_partition(std::vector<xsched::Int> sizes,
                                         std::vector<xsched::Int> counts,
                                         std::vector<xsched::Int> targets) {
  return {xsched::JobProfile(std::move(sizes), std::move(counts)), std::move(targets)};
}

xsched::SchedulingInstance make_scheduling(std::vector<xsched::Int> sizes,
                                           std::vector<xsched::Int> counts,
                                           std::vector<xsched::Int> speeds) {
  return {xsched::JobProfile(std::move(sizes), std::move(counts)), std::move(speeds)};
}

xsched::Assignment make_assignment(const Rows& rows, std::size_t num_sizes) {
  std::vector<xsched::Int> cells;
  cells.reserve(rows.size() * num_sizes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != num_sizes)
      throw xsched::InvalidArgumentError("assignment row " + std::to_string(i) + " has " +
                                         std::to_string(rows[i].size()) + " entries, expected " +
                                         std::to_string(num_sizes));
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return {rows.size(), num_sizes, std::move(cells)};
}

// The matrix arrives row-major, the instance stores columns.
xsched::mcilp::McilpInstance make_ilp(const Rows& matrix, std::vector<xsched::Int> rhs,
                                      std::vector<xsched::Int> objective,
                                      std::vector<std::vector<std::size_t>> groups,
                                      std::vector<xsched::Int> cardinalities) {
  xsched::mcilp::McilpInstance inst;
  std::size_t cols = objective.size();
  for (std::size_t j = 0; j < matrix.size(); ++j)
    if (matrix[j].size() != cols)
      throw xsched::InvalidArgumentError("matrix row " + std::to_string(j) + " has " +
                                         std::to_string(matrix[j].size()) +
                                         " entries, expected " + std::to_string(cols));
  inst.columns.assign(cols, std::vector<xsched::Int>(matrix.size(), xsched::Int(0)));
  for (std::size_t j = 0; j < matrix.size(); ++j)
    for (std::size_t i = 0; i < cols; ++i) inst.columns[i][j] = matrix[j][i];
  inst.rhs = std::move(rhs);
  inst.objective = std::move(objective);
  inst.groups = std::move(groups);
  inst.cardinalities = std::move(cardinalities);
  inst.validate();
  return inst;
}

xsched::mcilp::Relation parse_relation(const std::string& relation) {
  if (relation == "eq") return xsched::mcilp::Relation::Equality;
  if (relation == "le") return xsched::mcilp::Relation::Inequality;
  throw xsched::InvalidArgumentError("relation must be \"eq\" or \"le\", got \"" + relation + "\"");
}

py::dict report_to_dict(const xsched::VerificationReport& report) {
  py::dict out;
  out["pass"] = report.pass;
  out["loads"] = report.loads;
  out["column_sums"] = report.column_sums;
  out["violations"] = report.violations;
  return out;
}

py::object rows_or_none(const std::optional<xsched::Assignment>& asg) {
  if (!asg) return py::none();
  return py::cast(asg->rows());
}

py::object solution_or_none(const std::optional<xsched::mcilp::McilpSolution>& sol) {
  if (!sol) return py::none();
  return py::make_tuple(sol->objective, sol->x);
}

xsched::gen::GenParams make_params(long long m, long long n, std::uint64_t seed, long long d,
                                   long long p_max, long long s_max,
                                   const std::optional<std::vector<xsched::Int>>& sizes) {
  xsched::gen::GenParams params;
  params.m = m;
  params.n = n;
  params.seed = seed;
  params.d = d;
  params.p_max = p_max;
  params.s_max = s_max;
  if (sizes) params.sizes = *sizes;
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solvers for multiway partitioning and uniform-machine makespan minimization";

  py::register_exception<xsched::BudgetExceededError>(m, "BudgetExceeded");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const xsched::ArithmeticOverflowError& e) {
      PyErr_SetString(PyExc_OverflowError, e.what());
    } catch (const xsched::InvalidInstanceError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const xsched::InvalidArgumentError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "normalize_jobs",
      [](const std::vector<xsched::Int>& jobs) {
        xsched::JobProfile profile = xsched::normalize(jobs);
        return py::make_tuple(profile.sizes(), profile.counts());
      },
      py::arg("jobs"), "Collapse an explicit job list into (sizes, counts), sizes ascending.");

  m.def(
      "solve_partition",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> targets, std::optional<xsched::Int> pivot) {
        xsched::PartitionSolveOptions options;
        options.forced_pivot = pivot;
        return rows_or_none(xsched::solve_partition(
            make_partition(std::move(sizes), std::move(counts), std::move(targets)), options));
      },
      py::arg("sizes"), py::arg("counts"), py::arg("targets"), py::arg("pivot") = py::none(),
      "Exact feasibility: rows of per-size job counts per machine, or None.");

  m.def(
      "brute_partition",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> targets, long long budget) {
        return rows_or_none(xsched::oracle::brute_partition(
            make_partition(std::move(sizes), std::move(counts), std::move(targets)), budget));
      },
      py::arg("sizes"), py::arg("counts"), py::arg("targets"),
      py::arg("budget") = xsched::oracle::kDefaultBudget,
      "Exhaustive reference search for the same question as solve_partition.");

  m.def(
      "verify_partition",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> targets, const Rows& assignment) {
        std::size_t num_sizes = sizes.size();
        return report_to_dict(xsched::verify_partition(
            make_partition(std::move(sizes), std::move(counts), std::move(targets)),
            make_assignment(assignment, num_sizes)));
      },
      py::arg("sizes"), py::arg("counts"), py::arg("targets"), py::arg("assignment"),
      "Check exact loads and coverage; returns pass, loads, column_sums, violations.");

  m.def(
      "solve_makespan",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> speeds) {
        xsched::MakespanResult res = xsched::solve_makespan(
            make_scheduling(std::move(sizes), std::move(counts), std::move(speeds)));
        return py::make_tuple(res.value.str(), res.assignment.rows());
      },
      py::arg("sizes"), py::arg("counts"), py::arg("speeds"),
      "Exact minimum makespan as a rational string \"n/d\" plus a witness assignment.");

  m.def(
      "brute_makespan",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> speeds, long long budget) {
        return xsched::oracle::brute_makespan(
                   make_scheduling(std::move(sizes), std::move(counts), std::move(speeds)), budget)
            .str();
      },
      py::arg("sizes"), py::arg("counts"), py::arg("speeds"),
      py::arg("budget") = xsched::oracle::kDefaultBudget,
      "Exhaustive reference optimum as a rational string \"n/d\".");

  m.def(
      "verify_makespan",
      [](std::vector<xsched::Int> sizes, std::vector<xsched::Int> counts,
         std::vector<xsched::Int> speeds, const Rows& assignment) {
        std::size_t num_sizes = sizes.size();
        return xsched::verify_makespan(
                   make_scheduling(std::move(sizes), std::move(counts), std::move(speeds)),
                   make_assignment(assignment, num_sizes))
            .str();
      },
      py::arg("sizes"), py::arg("counts"), py::arg("speeds"), py::arg("assignment"),
      "Exact makespan of a complete assignment as a rational string \"n/d\".");

  m.def(
      "solve_mcilp",
      [](const Rows& matrix, std::vector<xsched::Int> rhs, std::vector<xsched::Int> objective,
         std::vector<std::vector<std::size_t>> groups, std::vector<xsched::Int> cardinalities,
         const std::string& relation) {
        xsched::mcilp::McilpInstance inst =
            make_ilp(matrix, std::move(rhs), std::move(objective), std::move(groups),
                     std::move(cardinalities));
        auto sol = parse_relation(relation) == xsched::mcilp::Relation::Equality
                       ? xsched::mcilp::solve_equality(inst)
                       : xsched::mcilp::solve_inequality(inst);
        return solution_or_none(sol);
      },
      py::arg("matrix"), py::arg("rhs"), py::arg("objective"), py::arg("groups"),
      py::arg("cardinalities"), py::arg("relation") = "eq",
      "Maximize c^T x subject to A x = b (relation \"eq\") or A x <= b (\"le\"), x >= 0\n"
      "integral, and per-group variable sums fixed to the cardinalities. The matrix is\n"
      "row-major. Returns (objective, x) or None.");

  m.def(
      "brute_mcilp",
      [](const Rows& matrix, std::vector<xsched::Int> rhs, std::vector<xsched::Int> objective,
         std::vector<std::vector<std::size_t>> groups, std::vector<xsched::Int> cardinalities,
         const std::string& relation, long long budget) {
        xsched::mcilp::McilpInstance inst =
            make_ilp(matrix, std::move(rhs), std::move(objective), std::move(groups),
                     std::move(cardinalities));
        return solution_or_none(
            xsched::oracle::brute_mcilp(inst, parse_relation(relation), budget));
      },
      py::arg("matrix"), py::arg("rhs"), py::arg("objective"), py::arg("groups"),
      py::arg("cardinalities"), py::arg("relation") = "eq",
      py::arg("budget") = xsched::oracle::kDefaultBudget,
      "Exhaustive reference search for the same question as solve_mcilp.");

  m.def(
      "gen_feasible_partition",
      [](long long m, long long n, std::uint64_t seed, long long d, long long p_max,
         const std::optional<std::vector<xsched::Int>>& sizes) {
        xsched::PartitionInstance inst =
            xsched::gen::gen_feasible_partition(make_params(m, n, seed, d, p_max, 3, sizes));
        return py::make_tuple(inst.jobs().sizes(), inst.jobs().counts(), inst.targets());
      },
      py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("d") = 2, py::arg("p_max") = 5,
      py::arg("sizes") = py::none(),
      "Random partition instance with a planted split: (sizes, counts, targets).");

  m.def(
      "gen_uniform_random",
      [](long long m, long long n, std::uint64_t seed, long long d, long long p_max,
         long long s_max, const std::optional<std::vector<xsched::Int>>& sizes) {
        xsched::SchedulingInstance inst =
            xsched::gen::gen_uniform_random(make_params(m, n, seed, d, p_max, s_max, sizes));
        return py::make_tuple(inst.jobs().sizes(), inst.jobs().counts(), inst.speeds());
      },
      py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("d") = 2, py::arg("p_max") = 5,
      py::arg("s_max") = 3, py::arg("sizes") = py::none(),
      "Random scheduling instance: (sizes, counts, speeds).");
}
