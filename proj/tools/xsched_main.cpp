#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xsched/core.hpp"
#include "xsched/errors.hpp"
#include "xsched/generator.hpp"
#include "xsched/io.hpp"
#include "xsched/makespan.hpp"
#include "xsched/mcilp.hpp"
#include "xsched/oracle.hpp"
#include "xsched/partition.hpp"

namespace {

using nlohmann::ordered_json;
using namespace xsched;

constexpr int kExitSolved = 0;
constexpr int kExitNegative = 1;   // infeasible instance or failed verification
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgumentError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json assignment_json(const Assignment& z) {
  return ordered_json(io::assignment_to_json(z));
}

ordered_json trace_json(const std::vector<greedy::TraceRecord>& trace) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : trace) {
    ordered_json row;
    row["phase"] = rec.phase;
    row["machine"] = rec.machine;
    row["size"] = ordered_json(io::int_to_json(rec.size));
    row["count"] = ordered_json(io::int_to_json(rec.count));
    arr.push_back(std::move(row));
  }
  return arr;
}

void emit(const ordered_json& doc) { std::cout << doc.dump() << "\n"; }

struct SolveFlags {
  std::string path;
  std::optional<long long> pivot;
  bool trace = false;
};

int cmd_solve(const SolveFlags& flags) {
  io::ParsedDocument doc = io::parse_document(read_file(flags.path));

  if (doc.kind == io::DocumentKind::Partition) {
    PartitionSolveOptions options;
    if (flags.pivot) options.forced_pivot = Int(*flags.pivot);
    std::vector<greedy::TraceRecord> trace;
    if (flags.trace) options.trace = &trace;
    std::optional<Assignment> z = solve_partition(*doc.partition, options);
    ordered_json out;
    out["feasible"] = z.has_value();
    if (z) out["assignment"] = assignment_json(*z);
    if (z && flags.trace) out["trace"] = trace_json(trace);
    emit(out);
    return z ? kExitSolved : kExitNegative;
  }

  if (doc.kind == io::DocumentKind::Scheduling) {
    if (flags.pivot) throw InvalidArgumentError("--pivot only applies to partition documents");
    MakespanResult result = solve_makespan(*doc.scheduling);
    ordered_json out;
    out["optimal"] = result.value.str();
    if (flags.trace) {
      // Rerun the decision at the optimum so the trace covers exactly the
      // assignment printed.
      PartitionSolveOptions options;
      std::vector<greedy::TraceRecord> trace;
      options.trace = &trace;
      std::optional<Assignment> z = decide_makespan(*doc.scheduling, result.value, options);
      if (!z) throw InternalInvariantError("optimal makespan bound did not verify");
      out["assignment"] = assignment_json(*z);
      out["trace"] = trace_json(trace);
    } else {
      out["assignment"] = assignment_json(result.assignment);
    }
    emit(out);
    return kExitSolved;
  }

  if (flags.pivot) throw InvalidArgumentError("--pivot only applies to partition documents");
  std::optional<mcilp::McilpSolution> sol = doc.relation == mcilp::Relation::Equality
                                                ? mcilp::solve_equality(*doc.ilp)
                                                : mcilp::solve_inequality(*doc.ilp);
  ordered_json out;
  out["feasible"] = sol.has_value();
  if (sol) {
    out["objective"] = ordered_json(io::int_to_json(sol->objective));
    out["x"] = ordered_json(io::ints_to_json(sol->x));
  }
  emit(out);
  return sol ? kExitSolved : kExitNegative;
}

int cmd_verify(const std::string& path) {
  io::ParsedDocument doc = io::parse_document(read_file(path));
  if (!doc.assignment)
    throw InvalidInstanceError("verify needs an \"assignment\" field in the document");

  if (doc.kind == io::DocumentKind::Partition) {
    VerificationReport report = verify_partition(*doc.partition, *doc.assignment);
    ordered_json out;
    out["pass"] = report.pass;
    out["loads"] = ordered_json(io::ints_to_json(report.loads));
    out["column_sums"] = ordered_json(io::ints_to_json(report.column_sums));
    out["violations"] = report.violations;
    emit(out);
    return report.pass ? kExitSolved : kExitNegative;
  }

  if (doc.kind == io::DocumentKind::Scheduling) {
    Rational makespan = verify_makespan(*doc.scheduling, *doc.assignment);
    std::vector<Int> loads;
    for (std::size_t i = 0; i < doc.scheduling->num_machines(); ++i)
      loads.push_back(doc.assignment->load(doc.scheduling->jobs(), i));
    ordered_json out;
    out["pass"] = true;
    out["makespan"] = makespan.str();
    out["loads"] = ordered_json(io::ints_to_json(loads));
    emit(out);
    return kExitSolved;
  }

  throw InvalidInstanceError("verify supports partition and scheduling documents");
}

int cmd_oracle(const std::string& path, long long budget) {
  io::ParsedDocument doc = io::parse_document(read_file(path));

  if (doc.kind == io::DocumentKind::Partition) {
    std::optional<Assignment> z = oracle::brute_partition(*doc.partition, budget);
    ordered_json out;
    out["feasible"] = z.has_value();
    if (z) out["assignment"] = assignment_json(*z);
    emit(out);
    return z ? kExitSolved : kExitNegative;
  }

  if (doc.kind == io::DocumentKind::Scheduling) {
    Rational best = oracle::brute_makespan(*doc.scheduling, budget);
    ordered_json out;
    out["optimal"] = best.str();
    emit(out);
    return kExitSolved;
  }

  std::optional<mcilp::McilpSolution> sol = oracle::brute_mcilp(*doc.ilp, doc.relation, budget);
  ordered_json out;
  out["feasible"] = sol.has_value();
  if (sol) {
    out["objective"] = ordered_json(io::int_to_json(sol->objective));
    out["x"] = ordered_json(io::ints_to_json(sol->x));
  }
  emit(out);
  return sol ? kExitSolved : kExitNegative;
}

struct GenFlags {
  std::string kind;
  gen::GenParams params;
  std::vector<long long> sizes;
};

int cmd_gen(const GenFlags& flags) {
  gen::GenParams params = flags.params;
  for (long long s : flags.sizes) params.sizes.push_back(Int(s));
  if (flags.kind == "feasible-partition") {
    std::cout << io::serialize_partition(gen::gen_feasible_partition(params)) << "\n";
    return kExitSolved;
  }
  if (flags.kind == "uniform-random") {
    std::cout << io::serialize_scheduling(gen::gen_uniform_random(params)) << "\n";
    return kExitSolved;
  }
  throw InvalidArgumentError("unknown --kind \"" + flags.kind +
                             "\"; expected feasible-partition or uniform-random");
}

struct BenchRow {
  std::string id;
  std::string kind;
  std::string verdict;
  double wall_ms_min = 0.0;
  int reps = 0;
  long long dp_states_peak = 0;
  long long dp_layers = 0;
};

BenchRow bench_file(const std::filesystem::path& path, int reps) {
  io::ParsedDocument doc = io::parse_document(read_file(path.string()));
  BenchRow row;
  row.id = path.stem().string();
  row.reps = reps;

  double best_ms = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    if (doc.kind == io::DocumentKind::Partition) {
      row.kind = "partition";
      SolveStats stats;
      PartitionSolveOptions options;
      options.stats = &stats;
      std::optional<Assignment> z = solve_partition(*doc.partition, options);
      row.verdict = z ? "feasible" : "infeasible";
      row.dp_states_peak = stats.dp_states_peak;
      row.dp_layers = stats.dp_layers;
    } else if (doc.kind == io::DocumentKind::Scheduling) {
      row.kind = "scheduling";
      SolveStats stats;
      PartitionSolveOptions options;
      options.stats = &stats;
      MakespanResult result = solve_makespan(*doc.scheduling, options);
      row.verdict = result.value.str();
      row.dp_states_peak = stats.dp_states_peak;
      row.dp_layers = stats.dp_layers;
    } else {
      row.kind = "mcilp";
      mcilp::McilpStats stats;
      mcilp::McilpSolveOptions options;
      options.stats = &stats;
      std::optional<mcilp::McilpSolution> sol = doc.relation == mcilp::Relation::Equality
                                                    ? mcilp::solve_equality(*doc.ilp, options)
                                                    : mcilp::solve_inequality(*doc.ilp, options);
      row.verdict = sol ? "objective=" + sol->objective.str() : "infeasible";
      row.dp_states_peak = stats.peak_layer_states;
      row.dp_layers = stats.layers;
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (rep == 0 || ms < best_ms) best_ms = ms;
  }
  row.wall_ms_min = best_ms;
  return row;
}

int cmd_bench(const std::string& dir, int reps, const std::string& format) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  if (ec) throw InvalidArgumentError("cannot read directory: " + dir);
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows;
  rows.reserve(files.size());
  for (const auto& path : files) rows.push_back(bench_file(path, reps));

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const BenchRow& row : rows) {
      ordered_json obj;
      obj["id"] = row.id;
      obj["kind"] = row.kind;
      obj["verdict"] = row.verdict;
      obj["wall_ms_min"] = row.wall_ms_min;
      obj["reps"] = row.reps;
      obj["dp_states_peak"] = row.dp_states_peak;
      obj["dp_layers"] = row.dp_layers;
      arr.push_back(std::move(obj));
    }
    emit(arr);
  } else {
    std::cout << "id,kind,verdict,wall_ms_min,reps,dp_states_peak,dp_layers\n";
    for (const BenchRow& row : rows) {
      std::cout << row.id << ',' << row.kind << ',' << row.verdict << ','
                << std::fixed << std::setprecision(3) << row.wall_ms_min << ',' << row.reps << ','
                << row.dp_states_peak << ',' << row.dp_layers << "\n";
    }
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for multiway number partitioning, makespan minimization on "
               "uniform machines, and multi-choice integer programs"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file exactly");
  solve->add_option("file", solve_flags.path, "Instance document (json)")->required();
  long long pivot_raw = 0;
  CLI::Option* pivot_opt =
      solve->add_option("--pivot", pivot_raw, "Force this job size as the pivot (partition only)");
  solve->add_flag("--trace", solve_flags.trace, "Include the reconstruction trace in the output");

  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify", "Check the assignment embedded in a document");
  verify->add_option("file", verify_path, "Document with an \"assignment\" field")->required();

  std::string oracle_path;
  long long oracle_budget = xsched::oracle::kDefaultBudget;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Solve by exhaustive search (small inputs)");
  oracle_cmd->add_option("file", oracle_path, "Instance document (json)")->required();
  oracle_cmd->add_option("--budget", oracle_budget, "Search node budget before giving up");

  GenFlags gen_flags;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance document");
  gen_cmd->add_option("--kind", gen_flags.kind, "feasible-partition or uniform-random")->required();
  gen_cmd->add_option("--d", gen_flags.params.d, "Number of distinct job sizes");
  gen_cmd->add_option("--pmax", gen_flags.params.p_max, "Largest allowed job size");
  gen_cmd->add_option("--m", gen_flags.params.m, "Number of machines");
  gen_cmd->add_option("--n", gen_flags.params.n, "Total number of jobs");
  gen_cmd->add_option("--smax", gen_flags.params.s_max, "Largest machine speed");
  gen_cmd->add_option("--seed", gen_flags.params.seed, "Random seed");
  gen_cmd->add_option("--sizes", gen_flags.sizes, "Explicit job sizes (overrides --d/--pmax)")
      ->delimiter(',');

  std::string bench_dir;
  int bench_reps = 3;
  std::string bench_format = "csv";
  CLI::App* bench = app.add_subcommand("bench", "Time every *.json instance in a directory");
  bench->add_option("dir", bench_dir, "Directory of instance documents")->required();
  bench->add_option("--reps", bench_reps, "Repetitions per instance (fastest wall time wins)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*solve) {
      if (*pivot_opt) solve_flags.pivot = pivot_raw;
      return cmd_solve(solve_flags);
    }
    if (*verify) return cmd_verify(verify_path);
    if (*oracle_cmd) return cmd_oracle(oracle_path, oracle_budget);
    if (*gen_cmd) return cmd_gen(gen_flags);
    if (*bench) return cmd_bench(bench_dir, bench_reps, bench_format);
  } catch (const InternalInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ArithmeticOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitInputError;
}
