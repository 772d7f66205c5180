#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "xsched/core.hpp"
#include "xsched/mcilp.hpp"

namespace xsched::io {

/// Integers are emitted as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise; parsing accepts both forms.
nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json ints_to_json(const std::vector<Int>& v);
std::vector<Int> ints_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json assignment_to_json(const Assignment& z);
Assignment assignment_from_json(const nlohmann::json& j, std::size_t machines,
                                std::size_t sizes);

enum class DocumentKind { Partition, Scheduling, Mcilp };

/// One parsed input document. Exactly one of the three instance members is
/// populated, matching `kind`. `assignment` is present when the document
/// carries one (used by the verify command).
struct ParsedDocument {
  DocumentKind kind;
  std::optional<PartitionInstance> partition;
  std::optional<SchedulingInstance> scheduling;
  std::optional<mcilp::McilpInstance> ilp;
  mcilp::Relation relation = mcilp::Relation::Equality;
  std::optional<Assignment> assignment;
};

/// Parses an instance document. Structure:
///   {"kind": "partition",  "sizes": [...], "counts": [...], "targets": [...]}
///   {"kind": "scheduling", "sizes": [...], "counts": [...], "speeds": [...]}
///   {"kind": "mcilp", "matrix": [[...], ...], "rhs": [...], "objective": [...],
///    "groups": [[...], ...], "cardinalities": [...], "relation": "eq"|"le"}
/// Jobs may alternatively be given as a flat list {"jobs": [...]} holding at
/// most one million entries; that form is normalized into sizes/counts and is
/// mutually exclusive with them. An optional "assignment" field (list of
/// machines-by-sizes rows) is parsed when present. Errors name the offending
/// field and throw InvalidInstanceError.
ParsedDocument parse_document(const std::string& text);

std::string serialize_partition(const PartitionInstance& inst, int indent = 2);
std::string serialize_scheduling(const SchedulingInstance& inst, int indent = 2);
std::string serialize_mcilp(const mcilp::McilpInstance& inst, mcilp::Relation relation,
                            int indent = 2);

}  // namespace xsched::io
