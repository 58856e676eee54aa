#include <algorithm>
#include "groupfair/corpus.hpp"

#include <chrono>
#include <sstream>

namespace groupfair {

namespace {

Valuation bin(std::vector<Utility> v) { return Valuation::binary(std::move(v)); }
Valuation add(std::vector<Utility> v) { return Valuation::additive(std::move(v)); }

Instance fixed_instance(int m, std::vector<Valuation> agents, std::vector<int> group_sizes) {
  Instance inst;
  inst.num_goods = m;
  inst.agents = std::move(agents);
  FixedGroups groups;
  AgentId next = 0;
  for (int size : group_sizes) {
    std::vector<AgentId> members;
    for (int i = 0; i < size; ++i) members.push_back(next++);
    groups.members.push_back(std::move(members));
  }
  inst.groups = std::move(groups);
  return inst;
}

// Binary valuations desiring exactly each `size`-subset of `m` goods, in
// lexicographic order of the subsets.
std::vector<Valuation> subset_desirers(int m, int size) {
  std::vector<Valuation> out;
  for (Bundle s = 0; s <= full_bundle(m); ++s) {
    if (bundle_size(s) != size) continue;
    std::vector<Utility> v(m, 0);
    for (int g : bundle_goods(s)) v[g] = 1;
    out.push_back(bin(std::move(v)));
  }
  // Bitmask order is colex; sort to lexicographic order of the good lists.
  std::sort(out.begin(), out.end(), [](const Valuation& a, const Valuation& b) {
    auto va = a.good_values(), vb = b.good_values();
    return std::lexicographical_compare(vb.begin(), vb.end(), va.begin(), va.end());
  });
  return out;
}

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

Expectation exhausted(std::uint64_t examined) { return {Expectation::Kind::exhausted, examined, {}, {}}; }
Expectation found() { return {Expectation::Kind::found, 0, {}, {}}; }

}  // namespace

Instance ef1_six_one_instance() {
  auto agents = subset_desirers(4, 2);
  agents.push_back(bin({1, 1, 1, 1}));
  return fixed_instance(4, std::move(agents), {6, 1});
}

Instance ef1_four_two_instance() {
  return fixed_instance(4,
                        {bin({1, 0, 1, 0}), bin({1, 0, 0, 1}), bin({0, 1, 1, 0}), bin({0, 1, 0, 1}),
                         bin({1, 1, 0, 0}), bin({0, 0, 1, 1})},
                        {4, 2});
}

Instance efc_equal_instance(int c) {
  if (c < 1 || 2 * c + 1 > kMaxGoods) throw DataError("efc_equal_instance: c out of range");
  const int m = 2 * c + 1;
  auto group = subset_desirers(m, c + 1);
  const int size = static_cast<int>(group.size());
  std::vector<Valuation> agents = group;
  agents.insert(agents.end(), group.begin(), group.end());
  return fixed_instance(m, std::move(agents), {size, size});
}

Instance efx0_two_one_instance() {
  return fixed_instance(6, {bin({1, 1, 1, 0, 0, 0}), bin({0, 0, 0, 1, 1, 1}), bin({1, 1, 1, 1, 1, 1})}, {2, 1});
}

Instance balanced_five_one_instance() {
  return fixed_instance(4,
                        {bin({1, 1, 0, 0}), bin({1, 0, 1, 0}), bin({1, 0, 0, 1}), bin({0, 1, 1, 0}),
                         bin({0, 1, 0, 1}), bin({1, 1, 0, 0})},
                        {5, 1});
}

Instance efx_additive_two_one_instance() {
  return fixed_instance(4, {add({3, 1, 1, 1}), add({1, 3, 1, 1}), add({3, 3, 1, 1})}, {2, 1});
}

Instance efx_balanced_agents_instance() {
  Instance inst;
  inst.num_goods = 3;
  inst.agents = {add({3, 1, 1}), add({3, 1, 1}), add({1, 3, 1}), add({1, 3, 1}), add({1, 1, 3}), add({1, 1, 3})};
  inst.groups = VariableGroups{{3, 3}};
  return inst;
}

Instance efx_balanced_individual_instance(int m) {
  if (m < 1 || m > kMaxGoods) throw DataError("efx_balanced_individual_instance: m out of range");
  std::vector<Utility> v(m, 1);
  v[0] = m;
  return fixed_instance(m, {add(v), add(v)}, {1, 1});
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  auto push = [&](std::string name, std::string desc, Instance inst, SearchConstraints cons, Expectation exp) {
    out.push_back({std::move(name), std::move(desc), std::move(inst), std::move(cons), std::move(exp)});
  };
  SearchConstraints ef1;
  push("ef1-6-1", "binary (6,1): pair desirers vs an all-desiring singleton; no EF1 allocation",
       ef1_six_one_instance(), ef1, exhausted(16));
  push("ef1-4-2", "binary (4,2): no EF1 allocation", ef1_four_two_instance(), ef1, exhausted(16));
  push("efc-equal-c1", "binary (3,3): one agent per 2-subset of 3 goods in each group; no EF1 allocation",
       efc_equal_instance(1), ef1, exhausted(8));
  push("efc-equal-c2", "binary (10,10): one agent per 3-subset of 5 goods in each group; no EF2 allocation",
       efc_equal_instance(2), SearchConstraints{false, false, std::nullopt, Notion::efc(2)}, exhausted(32));
  push("efx0-2-1", "binary (2,1): no EFX0 allocation", efx0_two_one_instance(),
       SearchConstraints{false, false, std::nullopt, Notion::efx0()}, exhausted(64));
  push("balanced-ef1-5-1", "binary (5,1): no balanced EF1 allocation", balanced_five_one_instance(),
       SearchConstraints{true, false, std::nullopt, Notion::ef1()}, exhausted(6));
  push("ef1-5-1-unbalanced", "binary (5,1): an EF1 allocation exists without the balance constraint",
       balanced_five_one_instance(), ef1, found());
  push("efx-additive-2-1", "additive (2,1): no EFX allocation", efx_additive_two_one_instance(),
       SearchConstraints{false, false, std::nullopt, Notion::efx()}, exhausted(16));
  push("efx-balanced-agents", "additive, six agents, three goods: no balanced partition with an EFX allocation",
       efx_balanced_agents_instance(), SearchConstraints{false, true, std::nullopt, Notion::efx()},
       exhausted(20 * power(2, 3)));
  for (int m = 3; m <= 8; ++m) {
    Expectation exp;
    exp.kind = Expectation::Kind::all_satisfy;
    exp.property_name = "some agent receives exactly one good";
    exp.property = [](const Allocation& a) {
      for (Bundle b : a.bundles) {
        if (bundle_size(b) == 1) return true;
      }
      return false;
    };
    push("efx-balanced-individual-m" + std::to_string(m),
         "identical additive (m,1,...,1), two individuals: every EFX allocation gives someone exactly one good",
         efx_balanced_individual_instance(m), SearchConstraints{false, false, std::nullopt, Notion::efx()},
         std::move(exp));
  }
  return out;
}

CorpusEntry corpus_entry(const std::string& name) {
  for (auto& e : corpus()) {
    if (e.name == name) return e;
  }
  throw DataError("unknown corpus entry: " + name);
}

CorpusOutcome run_corpus_entry(const CorpusEntry& entry, const SearchOptions& opts) {
  CorpusOutcome out;
  out.name = entry.name;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  switch (entry.expected.kind) {
    case Expectation::Kind::exhausted: {
      auto cert = find_fair(entry.instance, entry.constraints, opts);
      if (cert.found()) {
        detail << "expected exhaustion, found index " << cert.witness().index;
      } else {
        out.pass = cert.examined() == entry.expected.examined;
        detail << "exhausted " << cert.examined() << " (expected " << entry.expected.examined << ")";
      }
      break;
    }
    case Expectation::Kind::found: {
      auto cert = find_fair(entry.instance, entry.constraints, opts);
      out.pass = cert.found();
      if (cert.found()) {
        detail << "found index " << cert.witness().index;
      } else {
        detail << "expected a witness, exhausted " << cert.examined();
      }
      break;
    }
    case Expectation::Kind::all_satisfy: {
      std::uint64_t fair = 0, violating = 0;
      for_each_fair(entry.instance, entry.constraints, [&](const AgentPartition&, const Allocation& a) {
        ++fair;
        if (!entry.expected.property(a)) ++violating;
      });
      out.pass = fair > 0 && violating == 0;
      detail << fair << " fair allocations, " << violating << " violate: " << entry.expected.property_name;
      break;
    }
  }
  out.detail = detail.str();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace groupfair
