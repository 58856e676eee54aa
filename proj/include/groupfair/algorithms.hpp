#pragma once

// Constructive allocation procedures: balanced Exact1 bipartition, balanced
// EF1 for a (2,1) group shape, cut-and-choose and rotating knife for variable
// groups, relaxed proportionality for k variable groups, and round-robin.

#include <span>
#include <utility>
#include <vector>

#include "groupfair/model.hpp"

namespace groupfair {

/// Goods sorted by descending single-good value, ties by lower index.
class GoodOrdering {
 public:
  explicit GoodOrdering(const Valuation& v);
  std::span<const int> order() const { return order_; }

 private:
  std::vector<int> order_;
};

struct Bipartition {
  Bundle first = 0;
  Bundle second = 0;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Balanced bipartition of goods 0..m-1 that is Exact1 for both (responsive) agents.
/// The first bundle always has ceil(m/2) goods.
Bipartition exact1_partition(const Valuation& v1, const Valuation& v2, int m);

/// Balanced allocation for fixed groups of sizes {2, 1} (either order) that is EF1
/// for all three agents.
Allocation ef1_two_one(const Instance& inst);

struct VariableOutcome {
  AgentPartition partition;
  Allocation allocation;
};

/// Cut-and-choose along `line_order` for two variable groups of sizes n1 and n2.
VariableOutcome cut_and_choose_ef1(std::span<const Valuation> agents, int n1, int n2,
                                   std::span<const int> line_order);

/// Balanced partition of agents into two groups with a balanced EF1 allocation.
/// `circle_order` arranges the goods around the circle.
VariableOutcome rotating_knife(std::span<const Valuation> agents, std::span<const int> circle_order);

/// Thrown by rotating_knife if no cut admits a balanced EF1 assignment; only a
/// violated precondition or a bug can cause it.
class KnifeFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Partition into groups of the given sizes where each agent j gets
/// k*u_j(B) >= u_j(G) - (k-1)*max_g u_j(g). Additive valuations only.
VariableOutcome proportional_k_groups(std::span<const Valuation> agents, std::span<const int> sizes,
                                      std::span<const int> line_order);

/// Exact form of the proportionality guarantee for one agent in a k-group outcome.
bool meets_proportional_bound(const Valuation& v, Bundle bundle, int k, int num_goods);

/// Agents pick their favourite remaining good in turn; bundle i belongs to agent i.
Allocation round_robin(std::span<const Valuation> agents, int num_goods);

/// Identity order 0..m-1.
std::vector<int> identity_order(int m);

}  // namespace groupfair
