#pragma once

// JSON documents. Goods are 0-based indices; table keys are bundle bitmasks
// written as decimal strings. Additive values may be integers or "p/q"
// strings; each agent's values are scaled by the LCM of its denominators.

#include <optional>
#include <string>

#include <json.hpp>

#include "groupfair/binary_solver.hpp"
#include "groupfair/corpus.hpp"
#include "groupfair/fairness.hpp"
#include "groupfair/model.hpp"
#include "groupfair/oracle.hpp"

namespace groupfair {

using Json = nlohmann::ordered_json;

Json to_json(const Instance& inst);
/// Throws DataError on malformed documents; the result is validated.
Instance instance_from_json(const Json& doc);

Json to_json(const Allocation& alloc);
Allocation allocation_from_json(const Json& doc, int num_goods);
Json to_json(const AgentPartition& part);
AgentPartition partition_from_json(const Json& doc, int num_groups);

Json to_json(const FairnessReport& report);
Json to_json(const ReductionTrace& trace);
Json to_json(const SearchConstraints& cons);
SearchConstraints constraints_from_json(const Json& doc);

/// Instance, search constraints and expectation; properties are stored by name.
Json to_json(const CorpusEntry& entry);

/// Allocation document: bundles, optional partition and the fairness report.
Json allocation_document(const Allocation& alloc, const std::optional<AgentPartition>& part,
                         const Notion& notion, const FairnessReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace groupfair
