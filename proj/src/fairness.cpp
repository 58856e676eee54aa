#include "groupfair/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace groupfair {

Notion Notion::efc(int c) {
  if (c < 1) throw DataError("EFc requires c >= 1");
  return {Tag::efc, c};
}

Notion Notion::prop(int k) {
  if (k < 1) throw DataError("Prop requires k >= 1");
  return {Tag::prop, k};
}

std::string to_string(const Notion& n) {
  switch (n.tag) {
    case Notion::Tag::ef: return "EF";
    case Notion::Tag::efc: return "EF" + std::to_string(n.param);
    case Notion::Tag::efx: return "EFX";
    case Notion::Tag::efx0: return "EFX0";
    case Notion::Tag::prop: return "Prop(" + std::to_string(n.param) + ")";
  }
  return "?";
}

Notion parse_notion(const std::string& raw, int param) {
  std::string name;
  for (char ch : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (name == "ef") return Notion::ef();
  if (name == "efx") return Notion::efx();
  if (name == "efx0") return Notion::efx0();
  if (name == "efc") return Notion::efc(param);
  if (name == "prop") return Notion::prop(param);
  if (name.size() > 2 && name.rfind("ef", 0) == 0 &&
      std::all_of(name.begin() + 2, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    return Notion::efc(std::stoi(name.substr(2)));
  }
  throw DataError("unknown fairness notion: " + raw);
}

std::vector<AgentId> FairnessReport::failing_agents() const {
  std::vector<AgentId> out;
  for (const auto& v : agents) {
    if (!v.fair) out.push_back(v.agent);
  }
  return out;
}

namespace {

// Sum of the c largest single-good values inside `b` (additive valuations).
Utility top_values(const Valuation& v, Bundle b, int c) {
  auto vals = v.good_values();
  if (c == 1) {
    Utility best = 0;
    for (Bundle r = b; r; r &= r - 1) best = std::max(best, vals[__builtin_ctz(r)]);
    return best;
  }
  std::vector<Utility> in;
  for (Bundle r = b; r; r &= r - 1) in.push_back(vals[__builtin_ctz(r)]);
  int take = std::min<int>(c, static_cast<int>(in.size()));
  std::partial_sort(in.begin(), in.begin() + take, in.end(), std::greater<>());
  Utility s = 0;
  for (int i = 0; i < take; ++i) s += in[i];
  return s;
}

// Does some B ⊆ other with |B| <= c satisfy own_value >= u(other \ B)?
bool envy_free_up_to_c(const Valuation& v, Utility own_value, Bundle other, int c) {
  if (v.is_additive()) return own_value >= v.value(other) - top_values(v, other, c);
  if (own_value >= v.value(other)) return true;
  if (c == 1) {
    for (Bundle r = other; r; r &= r - 1) {
      if (own_value >= v.value(other & ~(r & -r))) return true;
    }
    return false;
  }
  // Non-additive: enumerate every removal set of size <= c.
  std::vector<int> goods = bundle_goods(other);
  std::function<bool(size_t, int, Bundle)> rec = [&](size_t start, int left, Bundle removed) {
    if (own_value >= v.value(other & ~removed)) return true;
    if (left == 0) return false;
    for (size_t i = start; i < goods.size(); ++i) {
      if (rec(i + 1, left - 1, removed | good_bit(goods[i]))) return true;
    }
    return false;
  };
  return rec(0, c, 0);
}

}  // namespace

AgentVerdict is_fair_for_agent(const Valuation& v, std::span<const Bundle> bundles, int own_group,
                               const Notion& notion) {
  AgentVerdict verdict;
  verdict.group = own_group;
  if (own_group < 0 || own_group >= static_cast<int>(bundles.size())) {
    throw DataError("agent's group has no bundle");
  }
  if ((notion.tag == Notion::Tag::efx || notion.tag == Notion::Tag::efx0) && !v.is_additive()) {
    throw UnsupportedError(to_string(notion) + " is only defined for additive valuations");
  }
  const Utility own = v.value(bundles[own_group]);

  if (notion.tag == Notion::Tag::prop) {
    Bundle all = 0;
    for (Bundle b : bundles) all |= b;
    verdict.fair = static_cast<Utility>(notion.param) * own >= v.value(all);
    return verdict;
  }

  for (int other = 0; other < static_cast<int>(bundles.size()); ++other) {
    if (other == own_group) continue;
    const Bundle ob = bundles[other];
    bool ok = true;
    switch (notion.tag) {
      case Notion::Tag::ef:
        ok = own >= v.value(ob);
        break;
      case Notion::Tag::efc:
        ok = envy_free_up_to_c(v, own, ob, notion.param);
        break;
      case Notion::Tag::efx:
      case Notion::Tag::efx0: {
        const Utility whole = v.value(ob);
        for (Bundle r = ob; r; r &= r - 1) {
          int g = __builtin_ctz(r);
          Utility ug = v.value_of_good(g);
          if (notion.tag == Notion::Tag::efx && ug == 0) continue;
          if (own < whole - ug) {
            ok = false;
            verdict.good = g;
            break;
          }
        }
        break;
      }
      case Notion::Tag::prop:
        break;
    }
    if (!ok) {
      verdict.fair = false;
      verdict.envied_group = other;
      return verdict;
    }
  }
  return verdict;
}

AgentVerdict is_fair_for_agent(const Instance& inst, const Allocation& alloc, AgentId agent, int group,
                               const Notion& notion) {
  if (agent < 0 || agent >= inst.num_agents()) throw DataError("agent id out of range");
  if (inst.has_fixed_groups()) {
    const auto& members = inst.fixed().members;
    if (group < 0 || group >= static_cast<int>(members.size()) ||
        std::find(members[group].begin(), members[group].end(), agent) == members[group].end()) {
      throw DataError("agent " + std::to_string(agent) + " is not a member of group " + std::to_string(group));
    }
  }
  auto v = is_fair_for_agent(inst.agents[agent], alloc.bundles, group, notion);
  v.agent = agent;
  return v;
}

FairnessReport is_fair(std::span<const Valuation> agents, const Allocation& alloc,
                       const AgentPartition& part, const Notion& notion) {
  if (part.group_of.size() != agents.size()) throw DataError("partition does not cover every agent");
  if (part.num_groups != alloc.num_groups()) throw DataError("partition and allocation disagree on group count");
  FairnessReport report;
  for (AgentId a = 0; a < static_cast<AgentId>(agents.size()); ++a) {
    auto v = is_fair_for_agent(agents[a], alloc.bundles, part.group_of[a], notion);
    v.agent = a;
    report.overall = report.overall && v.fair;
    report.agents.push_back(v);
  }
  return report;
}

FairnessReport is_fair(const Instance& inst, const Allocation& alloc, const AgentPartition& part,
                       const Notion& notion) {
  return is_fair(inst.agents, alloc, part, notion);
}

FairnessReport is_fair(const Instance& inst, const Allocation& alloc, const Notion& notion) {
  if (!inst.has_fixed_groups()) {
    throw DataError("instance has variable groups; an agent partition is required");
  }
  return is_fair(inst, alloc, partition_of(inst.fixed(), inst.num_agents()), notion);
}

bool finds_ef1(const Valuation& v, Bundle own, Bundle other) {
  return envy_free_up_to_c(v, v.value(own), other, 1);
}

bool is_exact1(const Valuation& v, Bundle x, Bundle y) {
  if (x & y) throw DataError("Exact1 partition bundles overlap");
  return finds_ef1(v, x, y) && finds_ef1(v, y, x);
}

bool is_balanced(std::span<const int> sizes) {
  if (sizes.empty()) return true;
  auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  return *hi - *lo <= 1;
}

bool is_balanced(const Allocation& alloc) {
  std::vector<int> sizes;
  for (Bundle b : alloc.bundles) sizes.push_back(bundle_size(b));
  return is_balanced(sizes);
}

bool is_balanced(const AgentPartition& part) { return is_balanced(part.sizes()); }

bool is_responsive(const Valuation& v) {
  if (v.is_additive()) return true;
  const int m = v.num_goods();
  const Bundle full = full_bundle(m);
  for (Bundle rest = 0;; ++rest) {
    for (int g = 0; g < m; ++g) {
      if (contains(rest, g)) continue;
      for (int h = 0; h < m; ++h) {
        if (h == g || contains(rest, h)) continue;
        if (v.value_of_good(g) >= v.value_of_good(h) &&
            v.value(rest | good_bit(g)) < v.value(rest | good_bit(h))) {
          return false;
        }
      }
    }
    if (rest == full) break;
  }
  return true;
}

}  // namespace groupfair
