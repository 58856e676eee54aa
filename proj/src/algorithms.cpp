#include "groupfair/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "groupfair/fairness.hpp"

namespace groupfair {

namespace {

constexpr int kMaxResponsiveCheckGoods = 16;

void require_responsive(const Valuation& v, const char* who) {
  if (v.is_additive()) return;
  if (v.num_goods() > kMaxResponsiveCheckGoods || !is_responsive(v)) {
    throw UnsupportedError(std::string(who) + " requires responsive valuations (additive, binary, or a responsive table)");
  }
}

void require_additive(const Valuation& v, const char* who) {
  if (!v.is_additive()) throw UnsupportedError(std::string(who) + " requires additive valuations");
}

void require_goods(std::span<const Valuation> agents, int m) {
  for (const auto& v : agents) {
    if (v.num_goods() != m) throw DataError("agent valuation does not cover the ordered goods");
  }
}

void require_permutation(std::span<const int> order, int m) {
  std::vector<int> seen(m, 0);
  if (static_cast<int>(order.size()) != m) throw DataError("good ordering has the wrong length");
  for (int g : order) {
    if (g < 0 || g >= m || seen[g]++) throw DataError("good ordering is not a permutation");
  }
}

}  // namespace

GoodOrdering::GoodOrdering(const Valuation& v) : order_(identity_order(v.num_goods())) {
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return v.value_of_good(a) > v.value_of_good(b); });
}

std::vector<int> identity_order(int m) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

Bipartition exact1_partition(const Valuation& v1, const Valuation& v2, int m) {
  if (v1.num_goods() != m || v2.num_goods() != m) throw DataError("valuations do not cover m goods");
  require_responsive(v1, "exact1_partition");
  require_responsive(v2, "exact1_partition");

  // Pad to an even count with a dummy good ranked last by both agents.
  const int padded = m + (m % 2);
  std::vector<int> red(padded), blue(padded);
  auto pair_up = [&](const Valuation& v, std::vector<int>& partner) {
    GoodOrdering ordering(v);
    std::vector<int> order(ordering.order().begin(), ordering.order().end());
    if (padded > m) order.push_back(m);
    for (int i = 0; i + 1 < padded; i += 2) {
      partner[order[i]] = order[i + 1];
      partner[order[i + 1]] = order[i];
    }
  };
  pair_up(v1, red);
  pair_up(v2, blue);

  // Every vertex has one red and one blue edge, so components are even cycles
  // (or doubled edges). Walk each from its lowest vertex, alternating colors.
  std::vector<int> color(padded, -1);
  for (int start = 0; start < padded; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    int prev = start;
    int cur = red[start];
    bool use_blue = true;
    while (color[cur] == -1) {
      color[cur] = 1 - color[prev];
      prev = cur;
      cur = use_blue ? blue[cur] : red[cur];
      use_blue = !use_blue;
    }
  }

  Bipartition out;
  for (int g = 0; g < m; ++g) (color[g] == 0 ? out.first : out.second) |= good_bit(g);
  if (bundle_size(out.first) < bundle_size(out.second)) std::swap(out.first, out.second);
  return out;
}

Allocation ef1_two_one(const Instance& inst) {
  const auto& members = inst.fixed().members;
  if (members.size() != 2 || members[0].size() + members[1].size() != 3 ||
      (members[0].size() != 1 && members[1].size() != 1)) {
    throw DataError("ef1_two_one requires two fixed groups of sizes 2 and 1");
  }
  const int pair_group = members[0].size() == 2 ? 0 : 1;
  const int single_group = 1 - pair_group;
  const auto& pair = members[pair_group];
  const Valuation& chooser = inst.agents[members[single_group][0]];

  auto split = exact1_partition(inst.agents[pair[0]], inst.agents[pair[1]], inst.num_goods);
  Bundle chosen = split.first;
  Bundle left = split.second;
  if (chooser.value(split.second) > chooser.value(split.first)) std::swap(chosen, left);

  Allocation alloc;
  alloc.bundles.assign(2, 0);
  alloc.bundles[single_group] = chosen;
  alloc.bundles[pair_group] = left;
  return alloc;
}

VariableOutcome cut_and_choose_ef1(std::span<const Valuation> agents, int n1, int n2,
                                   std::span<const int> line_order) {
  const int n = static_cast<int>(agents.size());
  const int m = static_cast<int>(line_order.size());
  if (n1 < 0 || n2 < 0 || n1 + n2 != n) throw DataError("group sizes must be non-negative and sum to n");
  require_goods(agents, m);
  require_permutation(line_order, m);
  const Bundle all = full_bundle(m);

  auto satisfied = [&](Bundle prefix) {
    std::vector<AgentId> out;
    for (AgentId a = 0; a < n; ++a) {
      if (finds_ef1(agents[a], prefix, all & ~prefix)) out.push_back(a);
    }
    return out;
  };

  Bundle prefix = 0;
  std::vector<AgentId> before;
  std::vector<AgentId> now = satisfied(prefix);
  for (int pos = 0; static_cast<int>(now.size()) < n1; ++pos) {
    // The whole set is EF1 for everyone, so this never runs past the line.
    prefix |= good_bit(line_order[pos]);
    before = std::move(now);
    now = satisfied(prefix);
  }

  std::vector<int> group_of(n, 1);
  int placed = 0;
  for (AgentId a : before) {
    group_of[a] = 0;
    ++placed;
  }
  for (AgentId a : now) {
    if (placed == n1) break;
    if (group_of[a] == 0) continue;
    group_of[a] = 0;
    ++placed;
  }

  VariableOutcome out;
  out.partition = AgentPartition{std::move(group_of), 2};
  out.allocation.bundles = {prefix, all & ~prefix};
  return out;
}

VariableOutcome rotating_knife(std::span<const Valuation> agents, std::span<const int> circle_order) {
  const int n = static_cast<int>(agents.size());
  const int m = static_cast<int>(circle_order.size());
  require_goods(agents, m);
  require_permutation(circle_order, m);

  // Dummy agent (all zeros, finds everything EF1) and dummy good (zero marginal
  // value, never materialized as a bit) for odd counts.
  std::vector<Valuation> padded(agents.begin(), agents.end());
  if (n % 2) padded.push_back(Valuation::additive(std::vector<Utility>(m, 0)));
  std::vector<int> circle(circle_order.begin(), circle_order.end());
  if (m % 2) circle.push_back(-1);

  const int total_agents = static_cast<int>(padded.size());
  const int half_agents = total_agents / 2;
  const int slots = static_cast<int>(circle.size());
  const int half_goods = slots / 2;
  const Bundle all = full_bundle(m);

  for (int cut = 0; cut <= half_goods; ++cut) {
    Bundle first = 0;
    for (int i = 0; i < half_goods; ++i) {
      int g = circle[(cut + i) % slots];
      if (g >= 0) first |= good_bit(g);
    }
    const Bundle second = all & ~first;

    std::vector<AgentId> only_first, only_second, flexible;
    for (AgentId a = 0; a < total_agents; ++a) {
      bool ok1 = finds_ef1(padded[a], first, second);
      bool ok2 = finds_ef1(padded[a], second, first);
      if (ok1 && ok2) {
        flexible.push_back(a);
      } else if (ok1) {
        only_first.push_back(a);
      } else if (ok2) {
        only_second.push_back(a);
      } else {
        throw KnifeFailure("agent " + std::to_string(a) + " finds neither bundle EF1; valuation is not monotonic");
      }
    }
    if (static_cast<int>(only_first.size()) > half_agents ||
        static_cast<int>(only_second.size()) > half_agents) {
      continue;
    }

    std::vector<int> group_of(total_agents, 1);
    for (AgentId a : only_first) group_of[a] = 0;
    int room = half_agents - static_cast<int>(only_first.size());
    for (AgentId a : flexible) {
      if (room == 0) break;
      group_of[a] = 0;
      --room;
    }
    group_of.resize(n);

    VariableOutcome out;
    out.partition = AgentPartition{std::move(group_of), 2};
    out.allocation.bundles = {first, second};
    return out;
  }
  throw KnifeFailure("no cut admits balanced EF1 assignment");
}

bool meets_proportional_bound(const Valuation& v, Bundle bundle, int k, int num_goods) {
  const Utility whole = v.value(full_bundle(num_goods));
  return static_cast<Utility>(k) * v.value(bundle) >= whole - static_cast<Utility>(k - 1) * v.max_good_value();
}

VariableOutcome proportional_k_groups(std::span<const Valuation> agents, std::span<const int> sizes,
                                      std::span<const int> line_order) {
  const int n = static_cast<int>(agents.size());
  const int m = static_cast<int>(line_order.size());
  const int k = static_cast<int>(sizes.size());
  if (k < 1) throw DataError("at least one group is required");
  int total = 0;
  for (int s : sizes) {
    if (s < 0) throw DataError("group sizes must be non-negative");
    total += s;
  }
  if (total != n) throw DataError("group sizes must sum to the number of agents");
  for (const auto& v : agents) require_additive(v, "proportional_k_groups");
  require_goods(agents, m);
  require_permutation(line_order, m);

  std::vector<int> group_of(n, -1);
  std::vector<Bundle> bundles(k, 0);
  int pos = 0;

  auto satisfied = [&](Bundle bundle) {
    std::vector<AgentId> out;
    for (AgentId a = 0; a < n; ++a) {
      if (group_of[a] == -1 && meets_proportional_bound(agents[a], bundle, k, m)) out.push_back(a);
    }
    return out;
  };

  for (int i = 0; i + 1 < k; ++i) {
    Bundle bundle = 0;
    std::vector<AgentId> before;
    std::vector<AgentId> now = satisfied(bundle);
    while (static_cast<int>(now.size()) < sizes[i]) {
      if (pos == m) throw std::logic_error("proportional_k_groups ran out of goods");
      bundle |= good_bit(line_order[pos++]);
      before = std::move(now);
      now = satisfied(bundle);
    }
    int placed = 0;
    for (AgentId a : before) {
      group_of[a] = i;
      ++placed;
    }
    for (AgentId a : now) {
      if (placed == sizes[i]) break;
      if (group_of[a] != -1) continue;
      group_of[a] = i;
      ++placed;
    }
    bundles[i] = bundle;
  }
  for (; pos < m; ++pos) bundles[k - 1] |= good_bit(line_order[pos]);
  for (int& g : group_of) {
    if (g == -1) g = k - 1;
  }

  VariableOutcome out;
  out.partition = AgentPartition{std::move(group_of), k};
  out.allocation.bundles = std::move(bundles);
  return out;
}

Allocation round_robin(std::span<const Valuation> agents, int num_goods) {
  const int n = static_cast<int>(agents.size());
  for (const auto& v : agents) require_additive(v, "round_robin");
  require_goods(agents, num_goods);
  if (n == 0 && num_goods > 0) throw DataError("round_robin needs at least one agent");

  Allocation alloc;
  alloc.bundles.assign(n, 0);
  Bundle remaining = full_bundle(num_goods);
  for (int turn = 0; remaining; turn = (turn + 1) % n) {
    auto vals = agents[turn].good_values();
    int pick = -1;
    for (Bundle r = remaining; r; r &= r - 1) {
      int g = __builtin_ctz(r);
      if (pick == -1 || vals[g] > vals[pick]) pick = g;
    }
    alloc.bundles[turn] |= good_bit(pick);
    remaining &= ~good_bit(pick);
  }
  return alloc;
}

}  // namespace groupfair
