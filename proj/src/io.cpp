#include "xsched/io.hpp"

#include <utility>

#include "xsched/errors.hpp"

namespace xsched::io {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxFlatJobs = 1'000'000;

[[noreturn]] void fail(const std::string& message) { throw InvalidInstanceError(message); }

const json& require_field(const json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) fail("missing field \"" + field + "\"");
  return *it;
}

void reject_unknown_combo(const json& doc, const char* a, const char* b) {
  if (doc.contains(a) && doc.contains(b))
    fail(std::string("fields \"") + a + "\" and \"" + b + "\" are mutually exclusive");
}

std::size_t index_from_json(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail("field \"" + field + "\" must hold nonnegative integers");
  return static_cast<std::size_t>(j.get<unsigned long long>());
}

JobProfile jobs_from_document(const json& doc) {
  reject_unknown_combo(doc, "jobs", "sizes");
  reject_unknown_combo(doc, "jobs", "counts");
  if (doc.contains("jobs")) {
    const json& flat = doc["jobs"];
    if (!flat.is_array()) fail("field \"jobs\" must be a list of sizes");
    if (flat.size() > kMaxFlatJobs)
      fail("field \"jobs\" lists " + std::to_string(flat.size()) +
           " entries; use \"sizes\" and \"counts\" for inputs this large");
    std::vector<Int> sizes;
    sizes.reserve(flat.size());
    for (const json& v : flat) sizes.push_back(int_from_json(v, "jobs"));
    return normalize(sizes);
  }
  if (!doc.contains("sizes") || !doc.contains("counts"))
    fail("jobs must be given as \"sizes\"+\"counts\" or as a flat \"jobs\" list");
  return JobProfile(ints_from_json(doc["sizes"], "sizes"),
                    ints_from_json(doc["counts"], "counts"));
}

mcilp::McilpInstance mcilp_from_document(const json& doc) {
  const json& matrix = require_field(doc, "matrix");
  if (!matrix.is_array()) fail("field \"matrix\" must be a list of rows");
  std::vector<std::vector<Int>> rows;
  rows.reserve(matrix.size());
  std::size_t cols = 0;
  for (const json& row : matrix) {
    rows.push_back(ints_from_json(row, "matrix"));
    if (rows.size() == 1)
      cols = rows.back().size();
    else if (rows.back().size() != cols)
      fail("field \"matrix\" rows have inconsistent lengths");
  }

  mcilp::McilpInstance inst;
  inst.rhs = ints_from_json(require_field(doc, "rhs"), "rhs");
  inst.objective = ints_from_json(require_field(doc, "objective"), "objective");
  if (rows.empty()) cols = inst.objective.size();
  inst.columns.assign(cols, std::vector<Int>(rows.size(), Int(0)));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < cols; ++i) inst.columns[i][j] = rows[j][i];
  if (inst.rhs.size() != rows.size())
    fail("field \"rhs\" must have one entry per matrix row");
  if (inst.objective.size() != cols)
    fail("field \"objective\" must have one entry per matrix column");

  const json& groups = require_field(doc, "groups");
  if (!groups.is_array()) fail("field \"groups\" must be a list of column index lists");
  for (const json& group : groups) {
    if (!group.is_array()) fail("field \"groups\" must be a list of column index lists");
    std::vector<std::size_t> members;
    members.reserve(group.size());
    for (const json& v : group) members.push_back(index_from_json(v, "groups"));
    inst.groups.push_back(std::move(members));
  }
  inst.cardinalities = ints_from_json(require_field(doc, "cardinalities"), "cardinalities");
  if (inst.cardinalities.size() != inst.groups.size())
    fail("field \"cardinalities\" must have one entry per group");
  try {
    inst.validate();
  } catch (const InvalidArgumentError& e) {
    fail(e.what());
  }
  return inst;
}

mcilp::Relation relation_from_document(const json& doc) {
  if (!doc.contains("relation")) return mcilp::Relation::Equality;
  const json& rel = doc["relation"];
  if (rel.is_string()) {
    const std::string value = rel.get<std::string>();
    if (value == "eq") return mcilp::Relation::Equality;
    if (value == "le") return mcilp::Relation::Inequality;
  }
  fail("field \"relation\" must be \"eq\" or \"le\"");
}

void jobs_to_json_fields(const JobProfile& jobs, json& doc) {
  doc["sizes"] = ints_to_json(jobs.sizes());
  doc["counts"] = ints_to_json(jobs.counts());
}

}  // namespace

json int_to_json(const Int& v) {
  if (v.fits_int64()) return json(static_cast<long long>(v.to_int64()));
  return json(v.str());
}

Int int_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer() && !j.is_number_unsigned()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    auto parsed = Int::parse(j.get<std::string>());
    if (parsed) return *parsed;
    fail("field \"" + field + "\" holds a string that is not a decimal integer: \"" +
         j.get<std::string>() + "\"");
  }
  fail("field \"" + field + "\" must hold integers (numbers or decimal strings)");
}

json ints_to_json(const std::vector<Int>& v) {
  json arr = json::array();
  for (const Int& x : v) arr.push_back(int_to_json(x));
  return arr;
}

std::vector<Int> ints_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) fail("field \"" + field + "\" must be a list of integers");
  std::vector<Int> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(int_from_json(v, field));
  return out;
}

json assignment_to_json(const Assignment& z) {
  json arr = json::array();
  for (const std::vector<Int>& row : z.rows()) arr.push_back(ints_to_json(row));
  return arr;
}

Assignment assignment_from_json(const json& j, std::size_t machines, std::size_t sizes) {
  if (!j.is_array() || j.size() != machines)
    fail("field \"assignment\" must list one row per machine (" + std::to_string(machines) +
         " expected)");
  Assignment z(machines, sizes);
  for (std::size_t i = 0; i < machines; ++i) {
    std::vector<Int> row = ints_from_json(j[i], "assignment");
    if (row.size() != sizes)
      fail("field \"assignment\" rows must have one entry per size (" + std::to_string(sizes) +
           " expected)");
    for (std::size_t k = 0; k < sizes; ++k) z.set(i, k, row[k]);
  }
  return z;
}

ParsedDocument parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid json: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be a json object");

  const json& kind = require_field(doc, "kind");
  if (!kind.is_string()) fail("field \"kind\" must be a string");
  const std::string kind_name = kind.get<std::string>();

  ParsedDocument out;
  if (kind_name == "partition") {
    out.kind = DocumentKind::Partition;
    JobProfile jobs = jobs_from_document(doc);
    std::vector<Int> targets = ints_from_json(require_field(doc, "targets"), "targets");
    out.partition = PartitionInstance(std::move(jobs), std::move(targets));
  } else if (kind_name == "scheduling") {
    out.kind = DocumentKind::Scheduling;
    JobProfile jobs = jobs_from_document(doc);
    std::vector<Int> speeds = ints_from_json(require_field(doc, "speeds"), "speeds");
    out.scheduling = SchedulingInstance(std::move(jobs), std::move(speeds));
  } else if (kind_name == "mcilp") {
    out.kind = DocumentKind::Mcilp;
    out.ilp = mcilp_from_document(doc);
    out.relation = relation_from_document(doc);
  } else {
    fail("unknown kind \"" + kind_name + "\"; expected partition, scheduling, or mcilp");
  }

  if (doc.contains("assignment")) {
    if (out.kind == DocumentKind::Partition)
      out.assignment = assignment_from_json(doc["assignment"], out.partition->num_machines(),
                                            out.partition->jobs().num_sizes());
    else if (out.kind == DocumentKind::Scheduling)
      out.assignment = assignment_from_json(doc["assignment"], out.scheduling->num_machines(),
                                            out.scheduling->jobs().num_sizes());
    else
      fail("field \"assignment\" is only valid for partition and scheduling documents");
  }
  return out;
}

std::string serialize_partition(const PartitionInstance& inst, int indent) {
  json doc;
  doc["kind"] = "partition";
  jobs_to_json_fields(inst.jobs(), doc);
  doc["targets"] = ints_to_json(inst.targets());
  return doc.dump(indent);
}

std::string serialize_scheduling(const SchedulingInstance& inst, int indent) {
  json doc;
  doc["kind"] = "scheduling";
  jobs_to_json_fields(inst.jobs(), doc);
  doc["speeds"] = ints_to_json(inst.speeds());
  return doc.dump(indent);
}

std::string serialize_mcilp(const mcilp::McilpInstance& inst, mcilp::Relation relation,
                            int indent) {
  json doc;
  doc["kind"] = "mcilp";
  json matrix = json::array();
  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    json row = json::array();
    for (std::size_t i = 0; i < inst.num_cols(); ++i) row.push_back(int_to_json(inst.columns[i][j]));
    matrix.push_back(std::move(row));
  }
  doc["matrix"] = std::move(matrix);
  doc["rhs"] = ints_to_json(inst.rhs);
  doc["objective"] = ints_to_json(inst.objective);
  json groups = json::array();
  for (const auto& group : inst.groups) {
    json members = json::array();
    for (std::size_t col : group) members.push_back(col);
    groups.push_back(std::move(members));
  }
  doc["groups"] = std::move(groups);
  doc["cardinalities"] = ints_to_json(inst.cardinalities);
  doc["relation"] = relation == mcilp::Relation::Equality ? "eq" : "le";
  return doc.dump(indent);
}

}  // namespace xsched::io
