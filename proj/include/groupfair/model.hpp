#pragma once

// Core domain types for group fair division of indivisible goods.
//
// Goods are indices 0..m-1 and bundles are bitmasks over them (bit g set
// means good g is in the bundle). Agents are dense indices 0..n-1. All
// utilities are exact non-negative integers.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace groupfair {

using Bundle = std::uint32_t;
using Utility = std::int64_t;
using AgentId = int;

/// Upper bound on the number of goods for any instance.
inline constexpr int kMaxGoods = 32;
/// Upper bound on the number of goods for explicit subset tables (2^m entries).
inline constexpr int kMaxTableGoods = 24;

/// Thrown for malformed data: bad valuations, bad instances, bad documents.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation does not support the valuation class or notion it was given.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an exhaustive search or exact computation would exceed its guard.
class TooLargeError : public std::runtime_error {
 public:
  TooLargeError(const std::string& what, double bound)
      : std::runtime_error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

constexpr Bundle full_bundle(int m) {
  return m >= 32 ? ~Bundle{0} : (Bundle{1} << m) - 1;
}
constexpr Bundle good_bit(int g) { return Bundle{1} << g; }
constexpr bool contains(Bundle b, int g) { return (b >> g) & 1u; }
inline int bundle_size(Bundle b) { return __builtin_popcount(b); }

std::vector<int> bundle_goods(Bundle b);
Bundle make_bundle(std::span<const int> goods);
/// Renders a bundle with 1-based good names, e.g. "{g1,g3}".
std::string bundle_to_string(Bundle b);

enum class ValuationKind { binary, additive, table };

const char* to_string(ValuationKind k);

/// An agent's utility function over bundles.
///
/// Binary and additive valuations store one value per good; table valuations
/// store all 2^m bundle values, indexed by bitmask. Entries of a table that
/// were never provided are "missing" and make value() throw. Construction only
/// checks shapes; semantic invariants (ranges, monotonicity) are reported by
/// validate().
class Valuation {
 public:
  static Valuation binary(std::vector<Utility> values);
  static Valuation additive(std::vector<Utility> values);
  /// `entries` must have 2^m slots; kMissing marks an absent subset.
  static Valuation table(int m, std::vector<Utility> entries);

  static constexpr Utility kMissing = -1;

  ValuationKind kind() const { return kind_; }
  int num_goods() const { return m_; }
  bool is_additive() const { return kind_ != ValuationKind::table; }

  Utility value(Bundle bundle) const;
  Utility value_of_good(int g) const;

  /// Per-good values for binary/additive valuations.
  std::span<const Utility> good_values() const { return values_; }
  /// Dense table entries (table valuations only).
  std::span<const Utility> table_entries() const { return values_; }

  /// Largest single-good value.
  Utility max_good_value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(ValuationKind kind, int m, std::vector<Utility> values)
      : kind_(kind), m_(m), values_(std::move(values)) {}

  ValuationKind kind_ = ValuationKind::additive;
  int m_ = 0;
  std::vector<Utility> values_;
};

/// Fixed partition of agents into groups; members[i] lists the agents of group i.
struct FixedGroups {
  std::vector<std::vector<AgentId>> members;
  friend bool operator==(const FixedGroups&, const FixedGroups&) = default;
};

/// Groups chosen together with the allocation; only the target sizes are given.
struct VariableGroups {
  std::vector<int> sizes;
  friend bool operator==(const VariableGroups&, const VariableGroups&) = default;
};

struct Instance {
  int num_goods = 0;
  std::vector<Valuation> agents;
  std::variant<FixedGroups, VariableGroups> groups;

  int num_agents() const { return static_cast<int>(agents.size()); }
  int num_groups() const;
  bool has_fixed_groups() const { return std::holds_alternative<FixedGroups>(groups); }
  const FixedGroups& fixed() const;
  const VariableGroups& variable() const;
  /// Group sizes (member counts for fixed groups, targets for variable groups).
  std::vector<int> group_sizes() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One bundle per group; pairwise disjoint and covering all goods.
struct Allocation {
  std::vector<Bundle> bundles;

  int num_groups() const { return static_cast<int>(bundles.size()); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Assignment of agents to groups 0..num_groups-1.
struct AgentPartition {
  std::vector<int> group_of;
  int num_groups = 0;

  std::vector<int> sizes() const;
  std::vector<std::vector<AgentId>> members() const;
  friend bool operator==(const AgentPartition&, const AgentPartition&) = default;
};

/// The agent partition implied by fixed groups.
AgentPartition partition_of(const FixedGroups& groups, int num_agents);

struct Violation {
  std::optional<AgentId> agent;
  std::optional<Bundle> subset;
  std::string message;
};

std::vector<Violation> validate(const Valuation& v, int m);
std::vector<Violation> validate(const Instance& inst);
/// Checks disjointness and coverage of `alloc` over `num_goods` goods.
std::vector<Violation> validate(const Allocation& alloc, int num_goods);
std::vector<Violation> validate(const AgentPartition& part, std::span<const int> sizes);

std::string describe(const Violation& v);

/// Throws DataError listing the violations when the report is non-empty.
void require_valid(const Instance& inst);

}  // namespace groupfair
