#include <random>

#include "doctest.h"
#include "xsched/errors.hpp"
#include "xsched/generator.hpp"
#include "xsched/oracle.hpp"
#include "xsched/partition.hpp"

using namespace xsched;

namespace {

PartitionInstance canonical_instance() {
  JobProfile jobs({Int(2), Int(3)}, {Int(2), Int(2)});
  return PartitionInstance(jobs, {Int(5), Int(5)});
}

}  // namespace

TEST_CASE("the canonical instance solves to the balanced split") {
  auto z = solve_partition(canonical_instance());
  REQUIRE(z.has_value());
  CHECK(z->rows() == std::vector<std::vector<Int>>{{Int(1), Int(1)}, {Int(1), Int(1)}});
}

TEST_CASE("imbalanced targets are recognized as infeasible") {
  JobProfile evens({Int(2)}, {Int(2)});
  CHECK_FALSE(solve_partition(PartitionInstance(evens, {Int(1), Int(3)})).has_value());

  // All size-3 jobs, targets that 3 cannot tile.
  JobProfile threes({Int(3)}, {Int(4)});
  CHECK_FALSE(solve_partition(PartitionInstance(threes, {Int(5), Int(7)})).has_value());
  CHECK(solve_partition(PartitionInstance(threes, {Int(3), Int(9)})).has_value());
}

TEST_CASE("forced pivots solve independently") {
  PartitionInstance inst = canonical_instance();
  for (long long pivot : {2, 3}) {
    PartitionSolveOptions options;
    options.forced_pivot = Int(pivot);
    auto z = solve_partition(inst, options);
    REQUIRE(z.has_value());
    CHECK(verify_partition(inst, *z).pass);
  }
  PartitionSolveOptions bad;
  bad.forced_pivot = Int(7);
  CHECK_THROWS_AS(solve_partition(inst, bad), InvalidArgumentError);
}

TEST_CASE("solver stats and trace describe the successful pivot") {
  SolveStats stats;
  std::vector<greedy::TraceRecord> trace;
  PartitionSolveOptions options;
  options.stats = &stats;
  options.trace = &trace;

  // Machines 1 and 2 are big, so reconstruction has real work to do.
  JobProfile jobs({Int(1), Int(2)}, {Int(2), Int(32)});
  PartitionInstance inst(jobs, {Int(10), Int(16), Int(40)});
  auto z = solve_partition(inst, options);
  REQUIRE(z.has_value());
  CHECK(verify_partition(inst, *z).pass);
  CHECK(stats.pivots_tried >= 1);
  CHECK(stats.ilp_solves >= 1);
  CHECK(stats.dp_layers >= 1);
  CHECK_FALSE(trace.empty());
  for (const auto& rec : trace) {
    CHECK(rec.phase >= 1);
    CHECK(rec.phase <= 3);
    CHECK(rec.machine < inst.num_machines());
    CHECK(rec.count > Int(0));
  }
}

TEST_CASE("big targets go through stripping and batched refills") {
  JobProfile jobs({Int(1), Int(10)}, {Int(300), Int(1971)});
  PartitionInstance inst(jobs, {Int(10000), Int(10010)});
  SolveStats stats;
  PartitionSolveOptions options;
  options.stats = &stats;
  auto z = solve_partition(inst, options);
  REQUIRE(z.has_value());
  CHECK(verify_partition(inst, *z).pass);
  CHECK(stats.pivots_tried == 1);  // pivot 1 already works
}

TEST_CASE("verdicts match the exhaustive oracle on an instance sweep") {
  std::mt19937_64 rng(77u);
  auto bounded = [&](unsigned long long n) { return n == 0 ? 0 : rng() % n; };
  int feasible = 0, infeasible = 0;
  for (int round = 0; round < 120; ++round) {
    // Jobs: up to 6 jobs over sizes from {1..4}.
    std::vector<Int> raw;
    const std::size_t n = 2 + bounded(5);
    for (std::size_t j = 0; j < n; ++j) raw.push_back(Int(1 + (long long)bounded(4)));
    JobProfile jobs = normalize(raw);
    const std::size_t m = 1 + bounded(2);
    if (Int(m) > jobs.total_jobs()) continue;

    // Random balanced targets: cut the total at random points.
    Int total = jobs.total_size();
    std::vector<Int> targets;
    Int rest = total;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Int cut((long long)bounded((unsigned long long)rest.to_int64() + 1));
      targets.push_back(cut);
      rest -= cut;
    }
    targets.push_back(rest);
    PartitionInstance inst(jobs, targets);

    auto mine = solve_partition(inst);
    auto brute = oracle::brute_partition(inst);
    REQUIRE(mine.has_value() == brute.has_value());
    if (mine) {
      CHECK(verify_partition(inst, *mine).pass);
      ++feasible;
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 10);
  CHECK(infeasible > 10);
}
