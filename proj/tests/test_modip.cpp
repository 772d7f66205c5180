#include "doctest.h"
#include "xsched/errors.hpp"
#include "xsched/mcilp.hpp"
#include "xsched/modip.hpp"

using namespace xsched;
using modip::Configuration;
using modip::MachineType;

namespace {

// p_max = 2 (threshold 16) with one small and two big machines.
PartitionInstance mixed_instance() {
  JobProfile jobs({Int(1), Int(2)}, {Int(2), Int(32)});
  return PartitionInstance(jobs, {Int(10), Int(16), Int(40)});
}

PartitionInstance canonical_instance() {
  JobProfile jobs({Int(2), Int(3)}, {Int(2), Int(2)});
  return PartitionInstance(jobs, {Int(5), Int(5)});
}

}  // namespace

TEST_CASE("machines split at the fourth power of the largest size") {
  modip::MachineClassification cls = modip::classify_machines(mixed_instance());
  CHECK(cls.threshold == Int(16));
  CHECK(cls.small_machines == std::vector<std::size_t>{0});
  CHECK(cls.big_machines == std::vector<std::size_t>{1, 2});
  CHECK(cls.is_small == std::vector<char>{1, 0, 0});
}

TEST_CASE("pivot model resolves the pivot index") {
  modip::PivotModel model = modip::make_pivot_model(mixed_instance(), Int(2));
  CHECK(model.pivot == Int(2));
  CHECK(model.pivot_index == 1);
  CHECK_THROWS_AS(modip::make_pivot_model(mixed_instance(), Int(7)), InvalidArgumentError);
}

TEST_CASE("types group small machines by target and big ones by residue") {
  PartitionInstance inst = mixed_instance();
  auto types = modip::enumerate_types(inst, modip::classify_machines(inst), Int(2));
  REQUIRE(types.size() == 2);
  CHECK(types[0].small);
  CHECK(types[0].value == Int(10));
  CHECK(types[0].machines == std::vector<std::size_t>{0});
  CHECK_FALSE(types[1].small);
  CHECK(types[1].value == Int(0));  // 16 and 40 are both even
  CHECK(types[1].machines == std::vector<std::size_t>{1, 2});
  CHECK(types[1].multiplicity() == Int(2));
}

TEST_CASE("big machines with one shared residue collapse into one type") {
  // Hand-built classification: every machine big, targets 20, 23, 26, pivot 3.
  JobProfile jobs({Int(2), Int(3)}, {Int(3), Int(21)});
  PartitionInstance inst(jobs, {Int(20), Int(23), Int(26)});
  modip::MachineClassification cls;
  cls.threshold = Int(1);
  cls.is_small = {0, 0, 0};
  cls.big_machines = {0, 1, 2};
  auto types = modip::enumerate_types(inst, cls, Int(3));
  REQUIRE(types.size() == 1);
  CHECK_FALSE(types[0].small);
  CHECK(types[0].value == Int(2));  // 20, 23, 26 are all 2 mod 3
  CHECK(types[0].machines == std::vector<std::size_t>{0, 1, 2});
  CHECK(types[0].multiplicity() == Int(3));
}

TEST_CASE("small configurations enumerate exact subset loads") {
  MachineType type{true, Int(3), {0}};
  auto configs = modip::enumerate_configs(type, {Int(1), Int(2)}, Int(1));
  CHECK(configs == std::vector<Configuration>{{Int(1), Int(1)}, {Int(3), Int(0)}});

  MachineType zero{true, Int(0), {0}};
  CHECK(modip::enumerate_configs(zero, {Int(1), Int(2)}, Int(1)) ==
        std::vector<Configuration>{{Int(0), Int(0)}});

  // 2 C0 + 4 C1 can never reach an odd target; the gcd prune proves it.
  MachineType odd{true, Int(7), {0}};
  CHECK(modip::enumerate_configs(odd, {Int(2), Int(4)}, Int(1)).empty());
}

TEST_CASE("big configurations live in the box and respect the congruence") {
  MachineType odd_residue{false, Int(1), {0}};
  auto configs = modip::enumerate_configs(odd_residue, {Int(1), Int(2)}, Int(2));
  CHECK(configs == std::vector<Configuration>{{Int(1), Int(0)}, {Int(1), Int(1)}});

  MachineType even_residue{false, Int(0), {0}};
  CHECK(modip::enumerate_configs(even_residue, {Int(1), Int(2)}, Int(2)) ==
        std::vector<Configuration>{{Int(0), Int(0)}, {Int(0), Int(1)}});

  // Residues are taken mod pivot, so value 20 behaves like 2 when pivot is 3.
  MachineType big{false, Int(20), {0}};
  auto wrapped = modip::enumerate_configs(big, {Int(2), Int(3)}, Int(3));
  auto direct = modip::enumerate_configs(MachineType{false, Int(2), {0}}, {Int(2), Int(3)}, Int(3));
  CHECK(wrapped == direct);
}

TEST_CASE("the configuration program for the canonical instance") {
  auto model = modip::build_config_ilp(canonical_instance(), Int(2));
  REQUIRE(model.has_value());
  REQUIRE(model->types.size() == 1);
  CHECK(model->types[0].small);
  CHECK(model->types[0].value == Int(5));

  // One variable: the single configuration (1, 1) covering target 5.
  REQUIRE(model->configs.size() == 1);
  CHECK(model->configs[0] == Configuration{Int(1), Int(1)});
  CHECK(model->var_type == std::vector<std::size_t>{0});

  const mcilp::McilpInstance& ilp = model->ilp;
  REQUIRE(ilp.num_cols() == 1);
  // Two size rows capped by the counts, then the pivot reserve row.
  CHECK(ilp.rhs == std::vector<Int>{Int(2), Int(2), Int(2)});
  CHECK(ilp.columns[0] == std::vector<Int>{Int(1), Int(1), Int(1)});
  CHECK(ilp.groups == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(ilp.cardinalities == std::vector<Int>{Int(2)});
  CHECK(ilp.objective == std::vector<Int>{Int(0)});

  auto sol = mcilp::solve_inequality(ilp);
  REQUIRE(sol.has_value());
  CHECK(sol->x == std::vector<Int>{Int(2)});

  Assignment asg = modip::decode(sol->x, *model, canonical_instance());
  CHECK(asg.rows() == std::vector<std::vector<Int>>{{Int(1), Int(1)}, {Int(1), Int(1)}});
  CHECK_NOTHROW(modip::check_modip_solution(canonical_instance(), model->pivot_model, asg));
}

TEST_CASE("big-machine columns do not count against the pivot reserve") {
  PartitionInstance inst = mixed_instance();
  auto model = modip::build_config_ilp(inst, Int(2));
  REQUIRE(model.has_value());
  // Pivot rhs: n_a - p_max^2 |B| = 32 - 4 * 2 = 24, in the last row.
  CHECK(model->ilp.rhs.back() == Int(24));
  bool saw_small = false, saw_big = false;
  for (std::size_t v = 0; v < model->configs.size(); ++v) {
    const MachineType& ty = model->types[model->var_type[v]];
    const std::vector<Int>& column = model->ilp.columns[v];
    REQUIRE(column.size() == 3);
    if (ty.small) {
      saw_small = true;
      CHECK(column.back() == model->configs[v][1]);
    } else {
      saw_big = true;
      CHECK(column.back() == Int(0));
    }
  }
  CHECK(saw_small);
  CHECK(saw_big);
}

TEST_CASE("a pivot without enough jobs for the reserve is rejected outright") {
  // n_a = 2 jobs of size 1 cannot reserve p_max^2 * |B| = 8 pivot jobs.
  CHECK_FALSE(modip::build_config_ilp(mixed_instance(), Int(1)).has_value());
  CHECK(modip::build_config_ilp(mixed_instance(), Int(2)).has_value());
}

TEST_CASE("decode parks uncovered jobs on the lowest big machine") {
  PartitionInstance inst = mixed_instance();
  auto model = modip::build_config_ilp(inst, Int(2));
  REQUIRE(model.has_value());
  auto sol = mcilp::solve_inequality(model->ilp);
  REQUIRE(sol.has_value());
  Assignment asg = modip::decode(sol->x, *model, inst);
  // Every job must land somewhere.
  CHECK(asg.column_sum(0) == Int(2));
  CHECK(asg.column_sum(1) == Int(32));
  CHECK_NOTHROW(modip::check_modip_solution(inst, model->pivot_model, asg));
}

TEST_CASE("decode rejects vectors that do not fit the model") {
  PartitionInstance inst = canonical_instance();
  auto model = modip::build_config_ilp(inst, Int(2));
  REQUIRE(model.has_value());
  CHECK_THROWS_AS(modip::decode({Int(1), Int(1)}, *model, inst), InvalidArgumentError);
  CHECK_THROWS_AS(modip::decode({Int(3)}, *model, inst), InvalidArgumentError);
  CHECK_THROWS_AS(modip::decode({Int(1)}, *model, inst), InvalidArgumentError);
  CHECK_THROWS_AS(modip::decode({Int(-1)}, *model, inst), InvalidArgumentError);
}

TEST_CASE("relaxed-solution checks catch each violated condition") {
  PartitionInstance inst = canonical_instance();
  modip::PivotModel model = modip::make_pivot_model(inst, Int(2));

  // Small machines must hit their target exactly.
  Assignment wrong_load(2, 2, {Int(2), Int(0), Int(0), Int(2)});
  CHECK_THROWS_AS(modip::check_modip_solution(inst, model, wrong_load), InvalidArgumentError);

  PartitionInstance mixed = mixed_instance();
  modip::PivotModel mixed_model = modip::make_pivot_model(mixed, Int(2));

  // Big machine 1 with load 15 breaks the congruence against target 16.
  Assignment off_parity(3, 2, {Int(0), Int(5), Int(1), Int(7), Int(1), Int(20)});
  CHECK_THROWS_AS(modip::check_modip_solution(mixed, mixed_model, off_parity),
                  InvalidArgumentError);

  // Small machine exact and big loads 0 are congruent, but the big machines
  // hold no pivot jobs at all: the reserve of p_max^2 |B| = 8 fires.
  Assignment starved(3, 2, {Int(0), Int(5), Int(0), Int(0), Int(0), Int(0)});
  CHECK_THROWS_AS(modip::check_modip_solution(mixed, mixed_model, starved), InvalidArgumentError);

  // Loads exact or congruent and the reserve satisfied, yet ten size-2 jobs
  // are missing: the coverage check fires.
  Assignment missing_jobs(3, 2, {Int(0), Int(5), Int(2), Int(7), Int(0), Int(10)});
  CHECK_THROWS_AS(modip::check_modip_solution(mixed, mixed_model, missing_jobs),
                  InvalidArgumentError);
}
