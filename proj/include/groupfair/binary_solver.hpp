#pragma once

// EF1 for two fixed groups with binary valuations.
//
// The solver repeatedly applies allocation-preserving reductions: each one
// hands some goods to the two groups (or makes an agent "undesire" a good) so
// that any EF1 allocation of what remains, extended by the handed-out goods,
// is EF1 for the original instance. On group shapes up to (5,1) and (3,2) the
// reductions always exhaust the goods; elsewhere the exhaustive oracle decides.

#include <optional>
#include <string>
#include <vector>

#include "groupfair/oracle.hpp"

namespace groupfair {

/// A good described by who desires it: bit j of desirers[i] is set when the
/// j-th member of group i desires the good.
struct BinaryGood {
  Bundle desirers_first = 0;
  Bundle desirers_second = 0;
};

std::vector<BinaryGood> binary_goods(const Instance& inst);

enum class ReductionRule {
  /// A good nobody in one group desires goes to the other group.
  undesired,
  /// g1 to the first group, g2 to the second, when the first group's desirers of
  /// g1 contain those of g2 and the second group's desirers of g1 are contained in those of g2.
  pair_dominance,
  /// Disjoint sets G1, G2 of equal size with every first-group agent desiring at
  /// least as many goods in G1 and every second-group agent at least as many in G2.
  set_dominance,
  /// As set_dominance with |G1| != |G2|.
  set_dominance_unequal,
  /// Odd number of goods, all desired by every agent of one group: one good to the other group.
  parity,
  /// An agent desiring an odd number of goods stops desiring one of them.
  perturb,
};

const char* to_string(ReductionRule r);

struct ReductionStep {
  ReductionRule rule = ReductionRule::undesired;
  Bundle to_first = 0;
  Bundle to_second = 0;
  /// For perturb: (agent, good).
  std::optional<std::pair<AgentId, int>> undesired;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;

  /// Two-bundle allocation of every good handed out by the steps.
  Allocation replay() const;
};

struct Preprocessed {
  /// Goods handed out so far (bundle 0 to group 0, bundle 1 to group 1).
  Allocation partial;
  /// Remaining goods re-indexed 0..r-1 with perturbed valuations; same groups.
  Instance reduced;
  /// Original index of each reduced good.
  std::vector<int> remaining_goods;
  ReductionTrace trace;
};

/// Maximum remaining goods for an exhaustive set-dominance search; larger
/// instances search set pairs of total size at most kMaxDominanceSetTotal.
inline constexpr int kExhaustiveDominanceGoods = 12;
inline constexpr int kMaxDominanceSetTotal = 6;

Preprocessed preprocess(const Instance& inst);

/// True for shapes where the reductions provably exhaust every instance:
/// componentwise at most (5,1) or (3,2), in either group order.
bool is_guaranteed_shape(int n1, int n2);

struct BinarySolveResult {
  /// EF1 allocation, or empty with `certificate` holding the exhaustion proof.
  std::optional<Allocation> allocation;
  ReductionTrace trace;
  /// The reductions alone allocated every good.
  bool reduction_complete = false;
  bool guaranteed_shape = false;
  /// Reductions stalled on a guaranteed shape; the oracle was used instead.
  bool assertion_fired = false;
  std::optional<Certificate> certificate;
};

BinarySolveResult solve_ef1_binary(const Instance& inst, const SearchOptions& opts = {});

}  // namespace groupfair
