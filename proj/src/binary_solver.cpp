#include "groupfair/binary_solver.hpp"

#include <iostream>

#include "groupfair/fairness.hpp"

namespace groupfair {

namespace {

void require_binary_two_groups(const Instance& inst) {
  require_valid(inst);
  if (!inst.has_fixed_groups() || inst.num_groups() != 2) {
    throw DataError("binary solver requires exactly two fixed groups");
  }
  for (const auto& v : inst.agents) {
    if (v.kind() != ValuationKind::binary) throw UnsupportedError("binary solver requires binary valuations");
  }
}

class Reducer {
 public:
  explicit Reducer(const Instance& inst) : inst_(inst), members_(inst.fixed().members) {
    remaining_ = full_bundle(inst.num_goods);
    for (const auto& v : inst.agents) {
      Bundle d = 0;
      auto vals = v.good_values();
      for (int g = 0; g < inst.num_goods; ++g) {
        if (vals[g]) d |= good_bit(g);
      }
      desires_.push_back(d);
    }
  }

  void run() {
    while (remaining_) {
      if (undesired() || pair_dominance() || parity() || perturb() || set_dominance()) continue;
      break;
    }
  }

  Preprocessed result() const {
    Preprocessed out;
    out.trace = trace_;
    out.partial = trace_.replay();
    out.remaining_goods = bundle_goods(remaining_);
    const int r = static_cast<int>(out.remaining_goods.size());
    out.reduced.num_goods = r;
    out.reduced.groups = inst_.groups;
    for (Bundle d : desires_) {
      std::vector<Utility> vals(r, 0);
      for (int i = 0; i < r; ++i) vals[i] = contains(d, out.remaining_goods[i]) ? 1 : 0;
      out.reduced.agents.push_back(Valuation::binary(std::move(vals)));
    }
    return out;
  }

 private:
  Bundle group_desirers(int group, int g) const {
    Bundle out = 0;
    const auto& ms = members_[group];
    for (size_t j = 0; j < ms.size(); ++j) {
      if (contains(desires_[ms[j]], g)) out |= good_bit(static_cast<int>(j));
    }
    return out;
  }

  void hand_out(ReductionRule rule, Bundle first, Bundle second) {
    trace_.steps.push_back({rule, first, second, std::nullopt});
    remaining_ &= ~(first | second);
  }

  bool undesired() {
    Bundle first = 0, second = 0;
    for (int g : bundle_goods(remaining_)) {
      if (group_desirers(1, g) == 0) {
        first |= good_bit(g);
      } else if (group_desirers(0, g) == 0) {
        second |= good_bit(g);
      }
    }
    if (!(first | second)) return false;
    hand_out(ReductionRule::undesired, first, second);
    return true;
  }

  bool pair_dominance() {
    auto goods = bundle_goods(remaining_);
    for (int g1 : goods) {
      const Bundle a1 = group_desirers(0, g1), b1 = group_desirers(1, g1);
      for (int g2 : goods) {
        if (g1 == g2) continue;
        const Bundle a2 = group_desirers(0, g2), b2 = group_desirers(1, g2);
        if ((a2 & ~a1) == 0 && (b1 & ~b2) == 0) {
          hand_out(ReductionRule::pair_dominance, good_bit(g1), good_bit(g2));
          return true;
        }
      }
    }
    return false;
  }

  bool all_desire_remaining(int group) const {
    for (AgentId a : members_[group]) {
      if ((desires_[a] & remaining_) != remaining_) return false;
    }
    return true;
  }

  bool parity() {
    if (bundle_size(remaining_) % 2 == 0) return false;
    const int lowest = __builtin_ctz(remaining_);
    if (all_desire_remaining(1)) {
      hand_out(ReductionRule::parity, good_bit(lowest), 0);
      return true;
    }
    if (all_desire_remaining(0)) {
      hand_out(ReductionRule::parity, 0, good_bit(lowest));
      return true;
    }
    return false;
  }

  bool perturb() {
    for (AgentId a = 0; a < inst_.num_agents(); ++a) {
      const Bundle d = desires_[a] & remaining_;
      if (bundle_size(d) % 2 == 1) {
        const int g = __builtin_ctz(d);
        desires_[a] &= ~good_bit(g);
        trace_.steps.push_back({ReductionRule::perturb, 0, 0, std::make_pair(a, g)});
        return true;
      }
    }
    return false;
  }

  bool dominates(Bundle first, Bundle second) const {
    for (AgentId a : members_[0]) {
      if (bundle_size(desires_[a] & first) < bundle_size(desires_[a] & second)) return false;
    }
    for (AgentId a : members_[1]) {
      if (bundle_size(desires_[a] & second) < bundle_size(desires_[a] & first)) return false;
    }
    return true;
  }

  // Smallest total size first; within a size, subsets U in lexicographic order
  // of their good lists and G1 running over submasks of U from U downwards.
  bool set_dominance() {
    const auto goods = bundle_goods(remaining_);
    const int r = static_cast<int>(goods.size());
    const int limit = r <= kExhaustiveDominanceGoods ? r : kMaxDominanceSetTotal;
    std::vector<int> pick;
    for (int total = 1; total <= limit; ++total) {
      pick.resize(total);
      for (int i = 0; i < total; ++i) pick[i] = i;
      while (true) {
        Bundle u = 0;
        for (int i : pick) u |= good_bit(goods[i]);
        for (Bundle g1 = u;; g1 = (g1 - 1) & u) {
          const Bundle g2 = u & ~g1;
          if (dominates(g1, g2)) {
            hand_out(bundle_size(g1) == bundle_size(g2) ? ReductionRule::set_dominance
                                                        : ReductionRule::set_dominance_unequal,
                     g1, g2);
            return true;
          }
          if (g1 == 0) break;
        }
        int i = total - 1;
        while (i >= 0 && pick[i] == r - total + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < total; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return false;
  }

  const Instance& inst_;
  const std::vector<std::vector<AgentId>>& members_;
  Bundle remaining_ = 0;
  std::vector<Bundle> desires_;
  ReductionTrace trace_;
};

}  // namespace

const char* to_string(ReductionRule r) {
  switch (r) {
    case ReductionRule::undesired: return "P1";
    case ReductionRule::pair_dominance: return "P3-pair";
    case ReductionRule::set_dominance: return "P3-sets";
    case ReductionRule::set_dominance_unequal: return "dominance-AB";
    case ReductionRule::parity: return "P2";
    case ReductionRule::perturb: return "P4";
  }
  return "?";
}

std::vector<BinaryGood> binary_goods(const Instance& inst) {
  require_binary_two_groups(inst);
  const auto& members = inst.fixed().members;
  std::vector<BinaryGood> out(inst.num_goods);
  for (int g = 0; g < inst.num_goods; ++g) {
    for (int group = 0; group < 2; ++group) {
      Bundle mask = 0;
      for (size_t j = 0; j < members[group].size(); ++j) {
        if (inst.agents[members[group][j]].good_values()[g]) mask |= good_bit(static_cast<int>(j));
      }
      (group == 0 ? out[g].desirers_first : out[g].desirers_second) = mask;
    }
  }
  return out;
}

Allocation ReductionTrace::replay() const {
  Allocation alloc;
  alloc.bundles.assign(2, 0);
  for (const auto& s : steps) {
    alloc.bundles[0] |= s.to_first;
    alloc.bundles[1] |= s.to_second;
  }
  return alloc;
}

Preprocessed preprocess(const Instance& inst) {
  require_binary_two_groups(inst);
  Reducer reducer(inst);
  reducer.run();
  return reducer.result();
}

bool is_guaranteed_shape(int n1, int n2) {
  auto within = [](int a, int b) { return (a <= 5 && b <= 1) || (a <= 3 && b <= 2); };
  return within(n1, n2) || within(n2, n1);
}

BinarySolveResult solve_ef1_binary(const Instance& inst, const SearchOptions& opts) {
  auto pre = preprocess(inst);
  BinarySolveResult res;
  res.trace = pre.trace;
  const auto sizes = inst.group_sizes();
  res.guaranteed_shape = is_guaranteed_shape(sizes[0], sizes[1]);

  if (pre.remaining_goods.empty()) {
    res.reduction_complete = true;
    res.allocation = pre.partial;
    if (!is_fair(inst, *res.allocation, Notion::ef1()).overall) {
      throw std::logic_error("reduction produced an allocation that is not EF1");
    }
    return res;
  }

  if (res.guaranteed_shape) {
    res.assertion_fired = true;
    std::cerr << "warning: reductions left " << pre.remaining_goods.size()
              << " goods on a guaranteed shape; falling back to exhaustive search\n";
  }

  // An EF1 completion of the reduced instance extends to the original one.
  auto reduced = find_fair(pre.reduced, SearchConstraints{}, opts);
  if (reduced.found()) {
    Allocation alloc = pre.partial;
    const auto& part = reduced.witness().allocation;
    for (int i = 0; i < static_cast<int>(pre.remaining_goods.size()); ++i) {
      const int owner = contains(part.bundles[0], i) ? 0 : 1;
      alloc.bundles[owner] |= good_bit(pre.remaining_goods[i]);
    }
    if (!is_fair(inst, alloc, Notion::ef1()).overall) {
      throw std::logic_error("extended reduced allocation is not EF1");
    }
    res.allocation = std::move(alloc);
    return res;
  }

  // Perturbed valuations are stricter than the originals, so only a search of
  // the original instance certifies non-existence.
  auto cert = find_fair(inst, SearchConstraints{}, opts);
  if (cert.found()) res.allocation = cert.witness().allocation;
  res.certificate = std::move(cert);
  return res;
}

}  // namespace groupfair
