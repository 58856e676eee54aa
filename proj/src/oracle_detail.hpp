#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "groupfair/oracle.hpp"

namespace groupfair::detail {

/// Everything the scan kernels need, resolved once before scanning.
struct SearchPlan {
  const Instance* inst = nullptr;
  SearchConstraints cons;
  std::vector<AgentPartition> partitions;
  int num_goods = 0;
  int num_groups = 0;
  std::uint64_t allocations_per_partition = 0;

  std::uint64_t total() const { return allocations_per_partition * partitions.size(); }

  /// Fills `bundles` for allocation `index` and returns false if it fails the balance filter.
  bool decode(std::uint64_t index, std::vector<Bundle>& bundles) const;
  bool all_fair(const AgentPartition& part, const std::vector<Bundle>& bundles) const;
};

SearchPlan make_plan(const Instance& inst, const SearchConstraints& cons);

struct ScanResult {
  std::optional<std::uint64_t> first;
  std::uint64_t examined = 0;
};

/// Reference scan: one thread, increasing index, stops at the first hit.
ScanResult scan_serial(const SearchPlan& plan);

/// Chunked OpenMP scan with an atomic best index; same result as scan_serial.
ScanResult scan_parallel(const SearchPlan& plan, int jobs);

}  // namespace groupfair::detail
