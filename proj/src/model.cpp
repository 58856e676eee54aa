#include "groupfair/model.hpp"

#include <algorithm>
#include <sstream>

namespace groupfair {

std::vector<int> bundle_goods(Bundle b) {
  std::vector<int> goods;
  while (b) {
    goods.push_back(__builtin_ctz(b));
    b &= b - 1;
  }
  return goods;
}

Bundle make_bundle(std::span<const int> goods) {
  Bundle b = 0;
  for (int g : goods) {
    if (g < 0 || g >= kMaxGoods) throw DataError("good index out of range: " + std::to_string(g));
    b |= good_bit(g);
  }
  return b;
}

std::string bundle_to_string(Bundle b) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int g : bundle_goods(b)) {
    if (!first) os << ',';
    os << 'g' << g + 1;
    first = false;
  }
  os << '}';
  return os.str();
}

const char* to_string(ValuationKind k) {
  switch (k) {
    case ValuationKind::binary: return "binary";
    case ValuationKind::additive: return "additive";
    case ValuationKind::table: return "table";
  }
  return "?";
}

Valuation Valuation::binary(std::vector<Utility> values) {
  if (values.size() > static_cast<size_t>(kMaxGoods)) throw DataError("too many goods");
  int m = static_cast<int>(values.size());
  return Valuation(ValuationKind::binary, m, std::move(values));
}

Valuation Valuation::additive(std::vector<Utility> values) {
  if (values.size() > static_cast<size_t>(kMaxGoods)) throw DataError("too many goods");
  int m = static_cast<int>(values.size());
  return Valuation(ValuationKind::additive, m, std::move(values));
}

Valuation Valuation::table(int m, std::vector<Utility> entries) {
  if (m < 0 || m > kMaxTableGoods) {
    throw DataError("table valuations support at most " + std::to_string(kMaxTableGoods) + " goods");
  }
  if (entries.size() != (size_t{1} << m)) throw DataError("table must have 2^m slots");
  return Valuation(ValuationKind::table, m, std::move(entries));
}

Utility Valuation::value(Bundle bundle) const {
  if (kind_ == ValuationKind::table) {
    if (bundle > full_bundle(m_)) throw DataError("bundle outside the goods of this valuation");
    Utility u = values_[bundle];
    if (u == kMissing) throw DataError("table valuation has no entry for " + bundle_to_string(bundle));
    return u;
  }
  Utility sum = 0;
  while (bundle) {
    int g = __builtin_ctz(bundle);
    if (g >= m_) throw DataError("bundle outside the goods of this valuation");
    sum += values_[g];
    bundle &= bundle - 1;
  }
  return sum;
}

Utility Valuation::value_of_good(int g) const {
  if (g < 0 || g >= m_) throw DataError("good index out of range");
  return kind_ == ValuationKind::table ? value(good_bit(g)) : values_[g];
}

Utility Valuation::max_good_value() const {
  Utility best = 0;
  for (int g = 0; g < m_; ++g) best = std::max(best, value_of_good(g));
  return best;
}

int Instance::num_groups() const {
  return std::visit(
      [](const auto& gs) -> int {
        if constexpr (std::is_same_v<std::decay_t<decltype(gs)>, FixedGroups>) {
          return static_cast<int>(gs.members.size());
        } else {
          return static_cast<int>(gs.sizes.size());
        }
      },
      groups);
}

const FixedGroups& Instance::fixed() const {
  if (!has_fixed_groups()) throw DataError("instance has variable groups, fixed groups required");
  return std::get<FixedGroups>(groups);
}

const VariableGroups& Instance::variable() const {
  if (has_fixed_groups()) throw DataError("instance has fixed groups, variable groups required");
  return std::get<VariableGroups>(groups);
}

std::vector<int> Instance::group_sizes() const {
  if (has_fixed_groups()) {
    std::vector<int> sizes;
    for (const auto& g : fixed().members) sizes.push_back(static_cast<int>(g.size()));
    return sizes;
  }
  return variable().sizes;
}

std::vector<int> AgentPartition::sizes() const {
  std::vector<int> s(num_groups, 0);
  for (int g : group_of) {
    if (g >= 0 && g < num_groups) ++s[g];
  }
  return s;
}

std::vector<std::vector<AgentId>> AgentPartition::members() const {
  std::vector<std::vector<AgentId>> out(num_groups);
  for (AgentId a = 0; a < static_cast<AgentId>(group_of.size()); ++a) {
    if (group_of[a] >= 0 && group_of[a] < num_groups) out[group_of[a]].push_back(a);
  }
  return out;
}

AgentPartition partition_of(const FixedGroups& groups, int num_agents) {
  AgentPartition p;
  p.num_groups = static_cast<int>(groups.members.size());
  p.group_of.assign(num_agents, -1);
  for (int i = 0; i < p.num_groups; ++i) {
    for (AgentId a : groups.members[i]) {
      if (a < 0 || a >= num_agents) throw DataError("agent id out of range in group " + std::to_string(i));
      p.group_of[a] = i;
    }
  }
  return p;
}

std::vector<Violation> validate(const Valuation& v, int m) {
  std::vector<Violation> out;
  if (v.num_goods() != m) {
    out.push_back({std::nullopt, std::nullopt,
                   "valuation covers " + std::to_string(v.num_goods()) + " goods, instance has " +
                       std::to_string(m)});
    return out;
  }
  if (v.is_additive()) {
    auto vals = v.good_values();
    for (int g = 0; g < m; ++g) {
      if (vals[g] < 0) {
        out.push_back({std::nullopt, good_bit(g), "negative value"});
      } else if (v.kind() == ValuationKind::binary && vals[g] > 1) {
        out.push_back({std::nullopt, good_bit(g), "binary range"});
      }
    }
    return out;
  }
  auto t = v.table_entries();
  Bundle full = full_bundle(m);
  bool total = true;
  for (Bundle s = 0;; ++s) {
    if (t[s] == Valuation::kMissing) {
      if (total) out.push_back({std::nullopt, s, "table not total"});
      total = false;
    } else if (t[s] < 0) {
      out.push_back({std::nullopt, s, "negative value"});
    }
    if (s == full) break;
  }
  if (!total) return out;
  if (t[0] != 0) out.push_back({std::nullopt, Bundle{0}, "not normalized"});
  // Monotonicity only needs to be checked along single-good additions.
  for (Bundle s = 1; m > 0; ++s) {
    for (Bundle rest = s; rest; rest &= rest - 1) {
      Bundle smaller = s & ~(rest & -rest);
      if (t[smaller] > t[s]) {
        out.push_back({std::nullopt, s, "monotonicity"});
        break;
      }
    }
    if (s == full) break;
  }
  return out;
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  if (inst.num_goods < 0 || inst.num_goods > kMaxGoods) {
    out.push_back({std::nullopt, std::nullopt, "number of goods out of range"});
    return out;
  }
  for (AgentId a = 0; a < inst.num_agents(); ++a) {
    for (auto v : validate(inst.agents[a], inst.num_goods)) {
      v.agent = a;
      out.push_back(std::move(v));
    }
  }
  if (inst.num_groups() < 1) out.push_back({std::nullopt, std::nullopt, "no groups"});
  if (inst.has_fixed_groups()) {
    std::vector<int> seen(inst.num_agents(), 0);
    for (const auto& members : inst.fixed().members) {
      for (AgentId a : members) {
        if (a < 0 || a >= inst.num_agents()) {
          out.push_back({a, std::nullopt, "group member is not an agent"});
        } else if (seen[a]++) {
          out.push_back({a, std::nullopt, "agent listed in more than one group"});
        }
      }
    }
    for (AgentId a = 0; a < inst.num_agents(); ++a) {
      if (!seen[a]) out.push_back({a, std::nullopt, "agent not assigned to any group"});
    }
  } else {
    int total = 0;
    for (int s : inst.variable().sizes) {
      if (s < 0) out.push_back({std::nullopt, std::nullopt, "negative group size"});
      total += s;
    }
    if (total != inst.num_agents()) {
      out.push_back({std::nullopt, std::nullopt,
                     "group sizes sum to " + std::to_string(total) + ", expected " +
                         std::to_string(inst.num_agents())});
    }
  }
  return out;
}

std::vector<Violation> validate(const Allocation& alloc, int num_goods) {
  std::vector<Violation> out;
  Bundle seen = 0;
  for (Bundle b : alloc.bundles) {
    if (seen & b) out.push_back({std::nullopt, seen & b, "bundles overlap"});
    seen |= b;
  }
  Bundle full = full_bundle(num_goods);
  if (seen & ~full) out.push_back({std::nullopt, seen & ~full, "bundle contains unknown goods"});
  if ((seen & full) != full) out.push_back({std::nullopt, full & ~seen, "goods left unallocated"});
  return out;
}

std::vector<Violation> validate(const AgentPartition& part, std::span<const int> sizes) {
  std::vector<Violation> out;
  if (part.num_groups != static_cast<int>(sizes.size())) {
    out.push_back({std::nullopt, std::nullopt, "partition has the wrong number of groups"});
    return out;
  }
  for (AgentId a = 0; a < static_cast<AgentId>(part.group_of.size()); ++a) {
    if (part.group_of[a] < 0 || part.group_of[a] >= part.num_groups) {
      out.push_back({a, std::nullopt, "agent assigned to a nonexistent group"});
    }
  }
  auto actual = part.sizes();
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (actual[i] != sizes[i]) {
      out.push_back({std::nullopt, std::nullopt,
                     "group " + std::to_string(i) + " has " + std::to_string(actual[i]) +
                         " agents, expected " + std::to_string(sizes[i])});
    }
  }
  return out;
}

std::string describe(const Violation& v) {
  std::string s = v.message;
  if (v.agent) s += " at agent " + std::to_string(*v.agent);
  if (v.subset) s += (v.agent ? ", subset " : " at subset ") + bundle_to_string(*v.subset);
  return s;
}

void require_valid(const Instance& inst) {
  auto report = validate(inst);
  if (report.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : report) msg += "\n  " + describe(v);
  throw DataError(msg);
}

}  // namespace groupfair
