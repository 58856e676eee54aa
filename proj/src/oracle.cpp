#include <algorithm>
#include <cmath>
#include <string>

#include "groupfair/oracle.hpp"
#include "oracle_detail.hpp"

namespace groupfair {

namespace detail {

namespace {

double multinomial(const std::vector<int>& sizes) {
  double out = 1;
  int placed = 0;
  for (int s : sizes) {
    for (int i = 1; i <= s; ++i) out = out * (placed + i) / i;
    placed += s;
  }
  return out;
}

double binomial(int n, int r) {
  double out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// Assignments with at most cap[i] agents in group i whose final counts pass
// `accept`, in lexicographic order of the group-of vector.
template <typename Accept>
void enumerate_assignments(int n, int k, const std::vector<int>& cap, Accept&& accept,
                           std::vector<AgentPartition>& out) {
  std::vector<int> group_of(n, 0), count(k, 0);
  auto rec = [&](auto&& self, int agent) -> void {
    if (agent == n) {
      if (accept(count)) out.push_back(AgentPartition{group_of, k});
      return;
    }
    for (int g = 0; g < k; ++g) {
      if (count[g] == cap[g]) continue;
      group_of[agent] = g;
      ++count[g];
      self(self, agent + 1);
      --count[g];
    }
  };
  rec(rec, 0);
}

void check_constraints(const Instance& inst, const SearchConstraints& cons) {
  if (inst.has_fixed_groups() && (cons.balanced_partition || cons.fixed_partition)) {
    throw DataError("partition constraints only apply to variable groups");
  }
  if (cons.balanced_partition && cons.fixed_partition) {
    throw DataError("balanced_partition and fixed_partition are mutually exclusive");
  }
}

}  // namespace

bool SearchPlan::decode(std::uint64_t index, std::vector<Bundle>& bundles) const {
  bundles.assign(num_groups, 0);
  if (num_groups == 2) {
    bundles[1] = static_cast<Bundle>(index);
    bundles[0] = full_bundle(num_goods) & ~bundles[1];
  } else {
    for (int g = 0; g < num_goods; ++g) {
      bundles[index % num_groups] |= good_bit(g);
      index /= num_groups;
    }
  }
  if (!cons.balanced_allocation) return true;
  int lo = num_goods, hi = 0;
  for (Bundle b : bundles) {
    int s = bundle_size(b);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo <= 1;
}

bool SearchPlan::all_fair(const AgentPartition& part, const std::vector<Bundle>& bundles) const {
  for (AgentId a = 0; a < inst->num_agents(); ++a) {
    if (!is_fair_for_agent(inst->agents[a], bundles, part.group_of[a], cons.notion).fair) return false;
  }
  return true;
}

SearchPlan make_plan(const Instance& inst, const SearchConstraints& cons) {
  require_valid(inst);
  check_constraints(inst, cons);
  if (cons.notion.tag == Notion::Tag::efx || cons.notion.tag == Notion::Tag::efx0) {
    for (const auto& v : inst.agents) {
      if (!v.is_additive()) throw UnsupportedError(to_string(cons.notion) + " is only defined for additive valuations");
    }
  }
  double space = search_space_size(inst, cons);
  if (space > kMaxSearchSpace) {
    throw TooLargeError("search space of " + std::to_string(static_cast<long long>(space)) +
                            " candidates exceeds the limit of 1e8",
                        space);
  }
  SearchPlan plan;
  plan.inst = &inst;
  plan.cons = cons;
  plan.num_goods = inst.num_goods;
  plan.num_groups = inst.num_groups();
  plan.allocations_per_partition = 1;
  for (int g = 0; g < plan.num_goods; ++g) plan.allocations_per_partition *= plan.num_groups;
  plan.partitions = candidate_partitions(inst, cons);
  return plan;
}

ScanResult scan_serial(const SearchPlan& plan) {
  ScanResult res;
  std::vector<Bundle> bundles;
  for (size_t p = 0; p < plan.partitions.size(); ++p) {
    for (std::uint64_t a = 0; a < plan.allocations_per_partition; ++a) {
      if (!plan.decode(a, bundles)) continue;
      ++res.examined;
      if (plan.all_fair(plan.partitions[p], bundles)) {
        res.first = p * plan.allocations_per_partition + a;
        return res;
      }
    }
  }
  return res;
}

}  // namespace detail

Allocation decode_allocation(std::uint64_t index, int num_goods, int num_groups) {
  Allocation alloc;
  alloc.bundles.assign(num_groups, 0);
  for (int g = 0; g < num_goods; ++g) {
    alloc.bundles[index % num_groups] |= good_bit(g);
    index /= num_groups;
  }
  return alloc;
}

std::vector<AgentPartition> candidate_partitions(const Instance& inst, const SearchConstraints& cons) {
  detail::check_constraints(inst, cons);
  const int n = inst.num_agents();
  const int k = inst.num_groups();
  if (inst.has_fixed_groups()) return {partition_of(inst.fixed(), n)};
  if (cons.fixed_partition) {
    auto sizes = inst.variable().sizes;
    auto report = validate(*cons.fixed_partition, sizes);
    if (!report.empty() || cons.fixed_partition->group_of.size() != static_cast<size_t>(n)) {
      throw DataError("fixed partition does not match the instance's group sizes");
    }
    return {*cons.fixed_partition};
  }
  std::vector<AgentPartition> out;
  if (cons.balanced_partition) {
    const int q = n / k, r = n % k;
    std::vector<int> cap(k, r ? q + 1 : q);
    detail::enumerate_assignments(
        n, k, cap,
        [&](const std::vector<int>& count) {
          int big = 0;
          for (int c : count) {
            if (c < q) return false;
            big += c > q;
          }
          return big == r;
        },
        out);
  } else {
    const auto& sizes = inst.variable().sizes;
    detail::enumerate_assignments(
        n, k, sizes, [&](const std::vector<int>& count) { return count == sizes; }, out);
  }
  return out;
}

double search_space_size(const Instance& inst, const SearchConstraints& cons) {
  const int k = inst.num_groups();
  double allocations = std::pow(static_cast<double>(k), inst.num_goods);
  double partitions = 1;
  if (!inst.has_fixed_groups() && !cons.fixed_partition) {
    const int n = inst.num_agents();
    if (cons.balanced_partition) {
      const int q = n / k, r = n % k;
      std::vector<int> sizes(k, q);
      for (int i = 0; i < r; ++i) ++sizes[i];
      partitions = detail::binomial(k, r) * detail::multinomial(sizes);
    } else {
      partitions = detail::multinomial(inst.variable().sizes);
    }
  }
  return allocations * partitions;
}

Certificate find_fair(const Instance& inst, const SearchConstraints& cons, const SearchOptions& opts) {
  auto plan = detail::make_plan(inst, cons);
  auto res = opts.execution == Execution::serial ? detail::scan_serial(plan) : detail::scan_parallel(plan, opts.jobs);
  if (!res.first) return Certificate{Exhausted{res.examined}};
  Found found;
  const std::uint64_t per = plan.allocations_per_partition;
  found.index = *res.first;
  found.allocation = decode_allocation(*res.first % per, plan.num_goods, plan.num_groups);
  if (!inst.has_fixed_groups()) found.partition = plan.partitions[*res.first / per];
  return Certificate{std::move(found)};
}

std::uint64_t for_each_fair(const Instance& inst, const SearchConstraints& cons,
                            const std::function<void(const AgentPartition&, const Allocation&)>& visit) {
  auto plan = detail::make_plan(inst, cons);
  std::uint64_t examined = 0;
  std::vector<Bundle> bundles;
  for (const auto& part : plan.partitions) {
    for (std::uint64_t a = 0; a < plan.allocations_per_partition; ++a) {
      if (!plan.decode(a, bundles)) continue;
      ++examined;
      if (plan.all_fair(part, bundles)) visit(part, Allocation{bundles});
    }
  }
  return examined;
}

}  // namespace groupfair
