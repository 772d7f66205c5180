#include <string>

#include "doctest.h"
#include "xsched/errors.hpp"
#include "xsched/io.hpp"

using namespace xsched;

TEST_CASE("int json round trip") {
  CHECK(io::int_to_json(Int(42)).is_number_integer());
  CHECK(io::int_to_json(Int(42)).get<long long>() == 42);
  Int huge = Int::parse("170141183460469231731687303715884105727").value();
  nlohmann::json j = io::int_to_json(huge);
  CHECK(j.is_string());
  CHECK(io::int_from_json(j, "x") == huge);
  CHECK(io::int_from_json(nlohmann::json(-7), "x") == Int(-7));
  CHECK(io::int_from_json(nlohmann::json(18446744073709551615ull), "x") ==
        Int(18446744073709551615ull));
  CHECK_THROWS_AS(io::int_from_json(nlohmann::json(1.5), "x"), InvalidInstanceError);
  CHECK_THROWS_AS(io::int_from_json(nlohmann::json("12a"), "x"), InvalidInstanceError);
}

TEST_CASE("partition document round trip") {
  JobProfile jobs({Int(2), Int(3)}, {Int(2), Int(2)});
  PartitionInstance inst(jobs, {Int(5), Int(5)});
  std::string text = io::serialize_partition(inst);
  io::ParsedDocument doc = io::parse_document(text);
  REQUIRE(doc.kind == io::DocumentKind::Partition);
  CHECK(doc.partition->jobs() == jobs);
  CHECK(doc.partition->targets() == std::vector<Int>{Int(5), Int(5)});
  CHECK_FALSE(doc.assignment.has_value());
}

TEST_CASE("scheduling document round trip") {
  JobProfile jobs({Int(4)}, {Int(3)});
  SchedulingInstance inst(jobs, {Int(1), Int(2)});
  io::ParsedDocument doc = io::parse_document(io::serialize_scheduling(inst));
  REQUIRE(doc.kind == io::DocumentKind::Scheduling);
  CHECK(doc.scheduling->jobs() == jobs);
  CHECK(doc.scheduling->speeds() == std::vector<Int>{Int(1), Int(2)});
}

TEST_CASE("mcilp document round trip keeps the matrix orientation") {
  mcilp::McilpInstance inst;
  inst.columns = {{Int(1), Int(0)}, {Int(-1), Int(2)}, {Int(3), Int(-4)}};
  inst.rhs = {Int(0), Int(2)};
  inst.objective = {Int(2), Int(1), Int(0)};
  inst.groups = {{0, 1}, {2}};
  inst.cardinalities = {Int(2), Int(1)};
  std::string text = io::serialize_mcilp(inst, mcilp::Relation::Inequality);

  io::ParsedDocument doc = io::parse_document(text);
  REQUIRE(doc.kind == io::DocumentKind::Mcilp);
  CHECK(doc.relation == mcilp::Relation::Inequality);
  CHECK(doc.ilp->columns == inst.columns);
  CHECK(doc.ilp->rhs == inst.rhs);
  CHECK(doc.ilp->objective == inst.objective);
  CHECK(doc.ilp->groups == inst.groups);
  CHECK(doc.ilp->cardinalities == inst.cardinalities);

  // The serialized matrix is row-major: first row is the first entry of every column.
  nlohmann::json raw = nlohmann::json::parse(text);
  CHECK(raw["matrix"][0] == nlohmann::json({1, -1, 3}));
  CHECK(raw["matrix"][1] == nlohmann::json({0, 2, -4}));
}

TEST_CASE("flat job lists are normalized") {
  io::ParsedDocument doc = io::parse_document(
      R"({"kind":"partition","jobs":[3,2,3,2,2],"targets":[7,5]})");
  CHECK(doc.partition->jobs().sizes() == std::vector<Int>{Int(2), Int(3)});
  CHECK(doc.partition->jobs().counts() == std::vector<Int>{Int(3), Int(2)});
}

TEST_CASE("document rejections name the offending field") {
  auto rejects = [](const std::string& text, const char* needle) {
    try {
      io::parse_document(text);
      FAIL_CHECK("expected rejection: " << text);
    } catch (const InvalidInstanceError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  rejects("[1,2]", "object");
  rejects(R"({"sizes":[2],"counts":[1],"targets":[2]})", "kind");
  rejects(R"({"kind":"magic"})", "kind");
  rejects(R"({"kind":"partition","targets":[0]})", "sizes");
  rejects(R"({"kind":"partition","jobs":[2],"sizes":[2],"counts":[1],"targets":[2]})",
          "mutually exclusive");
  rejects(R"({"kind":"partition","sizes":[2],"counts":[1],"targets":[1]})", "sum");
  rejects(R"({"kind":"partition","sizes":[2],"counts":[1],"targets":[2],"assignment":[[1],[0]]})",
          "assignment");
  rejects(R"({"kind":"partition","sizes":[2],"counts":[1.5],"targets":[2]})", "counts");
  rejects(R"({"kind":"scheduling","sizes":[2],"counts":[1]})", "speeds");
  rejects(R"({"kind":"mcilp","matrix":[[1],[1,2]],"rhs":[1,1],"objective":[1],"groups":[[0]],"cardinalities":[1]})",
          "matrix");
  rejects(R"({"kind":"mcilp","matrix":[[1]],"rhs":[1],"objective":[1],"groups":[[0]],"cardinalities":[1],"relation":"ge"})",
          "relation");
  rejects(R"({"kind":"mcilp","matrix":[[1,1]],"rhs":[1],"objective":[1,1],"groups":[[0]],"cardinalities":[1]})",
          "group");
  rejects("{bad", "invalid json");
}

TEST_CASE("oversized flat job lists are rejected with a hint") {
  std::string text = R"({"kind":"partition","jobs":[)";
  text.reserve(2'200'000);
  for (int i = 0; i < 1'000'001; ++i) {
    if (i > 0) text += ',';
    text += '1';
  }
  text += R"(],"targets":[1000001]})";
  try {
    io::parse_document(text);
    FAIL_CHECK("expected rejection");
  } catch (const InvalidInstanceError& e) {
    CHECK(std::string(e.what()).find("sizes") != std::string::npos);
  }
}

TEST_CASE("assignments embedded in documents are parsed") {
  io::ParsedDocument doc = io::parse_document(
      R"({"kind":"partition","sizes":[2,3],"counts":[2,2],"targets":[5,5],
          "assignment":[[1,1],[1,1]]})");
  REQUIRE(doc.assignment.has_value());
  CHECK(doc.assignment->at(0, 0) == Int(1));
  CHECK(doc.assignment->num_machines() == 2);

  CHECK_THROWS_AS(io::parse_document(
                      R"({"kind":"partition","sizes":[2],"counts":[2],"targets":[4],
                          "assignment":[[2,1]]})"),
                  InvalidInstanceError);
}
