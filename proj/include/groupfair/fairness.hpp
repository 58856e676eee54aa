#pragma once

// Fairness predicates for group allocations: EF, EFc (EF1 = EF with c = 1),
// EFX, EFX0 and relaxed proportionality, plus balancedness and Exact1.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupfair/model.hpp"

namespace groupfair {

struct Notion {
  enum class Tag { ef, efc, efx, efx0, prop };

  Tag tag = Tag::efc;
  /// c for EFc, k for Prop; unused otherwise.
  int param = 1;

  static Notion ef() { return {Tag::ef, 0}; }
  static Notion ef1() { return {Tag::efc, 1}; }
  static Notion efc(int c);
  static Notion efx() { return {Tag::efx, 0}; }
  static Notion efx0() { return {Tag::efx0, 0}; }
  static Notion prop(int k);

  friend bool operator==(const Notion&, const Notion&) = default;
};

std::string to_string(const Notion& n);
/// Accepts "ef", "ef1", "ef<c>", "efc" (with `param` as c), "efx", "efx0", "prop" (with `param` as k).
Notion parse_notion(const std::string& name, int param = 1);

struct AgentVerdict {
  AgentId agent = 0;
  int group = 0;
  bool fair = true;
  /// Smallest envied group index that violates the notion.
  std::optional<int> envied_group;
  /// For EFX/EFX0: smallest good whose removal fails to eliminate envy.
  std::optional<int> good;
};

struct FairnessReport {
  std::vector<AgentVerdict> agents;
  bool overall = true;

  std::vector<AgentId> failing_agents() const;
};

/// Decides `notion` for one agent with valuation `v` whose group owns bundles[own_group].
AgentVerdict is_fair_for_agent(const Valuation& v, std::span<const Bundle> bundles, int own_group,
                               const Notion& notion);

/// Same, with the agent taken from `inst`. For fixed groups the agent must belong to `group`.
AgentVerdict is_fair_for_agent(const Instance& inst, const Allocation& alloc, AgentId agent, int group,
                               const Notion& notion);

/// Aggregates over all agents using the instance's fixed partition.
FairnessReport is_fair(const Instance& inst, const Allocation& alloc, const Notion& notion);
/// Aggregates over all agents using an explicit partition (variable groups).
FairnessReport is_fair(const Instance& inst, const Allocation& alloc, const AgentPartition& part,
                       const Notion& notion);
FairnessReport is_fair(std::span<const Valuation> agents, const Allocation& alloc,
                       const AgentPartition& part, const Notion& notion);

/// Two-bundle EF1: an agent holding `own` does not envy `other` up to one good.
bool finds_ef1(const Valuation& v, Bundle own, Bundle other);

/// True iff the agent regards both bundles of the bipartition (x, y) as EF1.
bool is_exact1(const Valuation& v, Bundle x, Bundle y);

bool is_balanced(std::span<const int> sizes);
bool is_balanced(const Allocation& alloc);
bool is_balanced(const AgentPartition& part);

/// Responsiveness: swapping in a weakly better single good never lowers a bundle's value.
/// Additive and binary valuations are responsive; tables are checked exhaustively.
bool is_responsive(const Valuation& v);

}  // namespace groupfair
