#pragma once

// Exhaustive existence search for fair allocations on small instances.
//
// Allocations over k groups are enumerated as base-k counters over the goods,
// good 0 being the least significant digit (digit = receiving group). Agent
// partitions for variable groups are enumerated in lexicographic order of the
// group-of vector. The combined search space is partition-major, so the
// returned witness is the smallest satisfying (partition, allocation) pair in
// that order, independent of how the scan is scheduled.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "groupfair/fairness.hpp"
#include "groupfair/model.hpp"

namespace groupfair {

/// Guard on partitions * k^m.
inline constexpr double kMaxSearchSpace = 1e8;

struct SearchConstraints {
  bool balanced_allocation = false;
  /// Variable groups only: search every balanced size vector instead of the instance's sizes.
  bool balanced_partition = false;
  /// Variable groups only: search this single partition.
  std::optional<AgentPartition> fixed_partition;
  Notion notion = Notion::ef1();
};

struct Found {
  Allocation allocation;
  /// Set for variable-group searches.
  std::optional<AgentPartition> partition;
  std::uint64_t index = 0;
};

struct Exhausted {
  /// Candidates examined (those passing the balance filters).
  std::uint64_t examined = 0;
};

struct Certificate {
  std::variant<Found, Exhausted> outcome;

  bool found() const { return std::holds_alternative<Found>(outcome); }
  const Found& witness() const { return std::get<Found>(outcome); }
  std::uint64_t examined() const { return std::get<Exhausted>(outcome).examined; }
};

enum class Execution { serial, parallel };

struct SearchOptions {
  Execution execution = Execution::parallel;
  /// Worker threads for parallel execution; 0 uses the OpenMP default.
  int jobs = 0;
};

/// Size of the (partition x allocation) space the search would scan.
double search_space_size(const Instance& inst, const SearchConstraints& cons);

/// Decides existence of an allocation (and partition, for variable groups)
/// satisfying `cons`. Throws TooLargeError past kMaxSearchSpace.
Certificate find_fair(const Instance& inst, const SearchConstraints& cons, const SearchOptions& opts = {});

/// Calls `visit` for every satisfying pair in search order; returns the number
/// of candidates examined.
std::uint64_t for_each_fair(const Instance& inst, const SearchConstraints& cons,
                            const std::function<void(const AgentPartition&, const Allocation&)>& visit);

/// The candidate agent partitions the search would consider, in search order.
std::vector<AgentPartition> candidate_partitions(const Instance& inst, const SearchConstraints& cons);

/// Decodes allocation number `index` (base-k digits over goods).
Allocation decode_allocation(std::uint64_t index, int num_goods, int num_groups);

}  // namespace groupfair
