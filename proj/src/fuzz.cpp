#include "groupfair/fuzz.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

#include "groupfair/algorithms.hpp"
#include "groupfair/binary_solver.hpp"
#include "groupfair/fairness.hpp"

namespace groupfair {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Case {
  bool pass = true;
  std::string why;
};

Case fail(std::string why) { return {false, std::move(why)}; }

std::string describe_instance(const Instance& inst) {
  std::ostringstream os;
  os << "m=" << inst.num_goods << " n=" << inst.num_agents();
  return os.str();
}

Instance two_group_instance(std::vector<Valuation> agents, int n1, int m) {
  Instance inst;
  inst.num_goods = m;
  const int n = static_cast<int>(agents.size());
  FixedGroups g{{{}, {}}};
  for (int a = 0; a < n; ++a) g.members[a < n1 ? 0 : 1].push_back(a);
  inst.agents = std::move(agents);
  inst.groups = std::move(g);
  return inst;
}

Case binary_case(Rng& rng, int n1, int n2, const SearchOptions& opts, SuiteResult& res) {
  const int m = uniform(rng, 1, 10);
  std::vector<Valuation> agents;
  for (int a = 0; a < n1 + n2; ++a) agents.push_back(random_binary(rng, m));
  auto inst = two_group_instance(std::move(agents), n1, m);
  auto out = solve_ef1_binary(inst, opts);
  if (out.assertion_fired) ++res.counters["fallback"];
  if (!out.allocation) return fail("no allocation for " + describe_instance(inst));
  if (!is_fair(inst, *out.allocation, Notion::ef1()).overall) return fail("not EF1 on " + describe_instance(inst));
  return {};
}

Case exact1_case(Rng& rng) {
  const int m = uniform(rng, 0, 12);
  auto v1 = random_additive(rng, m), v2 = random_additive(rng, m);
  auto p = exact1_partition(v1, v2, m);
  if ((p.first | p.second) != full_bundle(m) || (p.first & p.second)) return fail("not a partition");
  if (bundle_size(p.first) != (m + 1) / 2 || bundle_size(p.second) != m / 2) return fail("unbalanced split");
  if (!is_exact1(v1, p.first, p.second) || !is_exact1(v2, p.first, p.second)) {
    return fail("not Exact1 with m=" + std::to_string(m));
  }
  return {};
}

Case ef1_two_one_case(Rng& rng) {
  const int m = uniform(rng, 0, 10);
  std::vector<Valuation> agents;
  for (int a = 0; a < 3; ++a) agents.push_back(random_additive(rng, m));
  auto inst = two_group_instance(std::move(agents), 2, m);
  auto alloc = ef1_two_one(inst);
  if (!is_balanced(alloc)) return fail("unbalanced allocation");
  if (!is_fair(inst, alloc, Notion::ef1()).overall) return fail("not EF1 on " + describe_instance(inst));
  return {};
}

bool exact_sizes(const AgentPartition& part, std::span<const int> sizes) {
  return part.sizes() == std::vector<int>(sizes.begin(), sizes.end());
}

Case knife_case(Rng& rng, SuiteResult& res) {
  const int n = uniform(rng, 1, 8), m = uniform(rng, 1, 10);
  std::vector<Valuation> agents;
  for (int a = 0; a < n; ++a) agents.push_back(random_monotone_table(rng, m));
  auto order = random_order(rng, m);
  VariableOutcome out;
  try {
    out = rotating_knife(agents, order);
  } catch (const KnifeFailure& e) {
    ++res.counters["knife_failure"];
    return fail(e.what());
  }
  if (static_cast<int>(out.partition.group_of.size()) != n) return fail("partition covers the wrong agents");
  if (!is_balanced(out.partition) || !is_balanced(out.allocation)) return fail("unbalanced output");
  if (!is_fair(agents, out.allocation, out.partition, Notion::ef1()).overall) return fail("not EF1");
  return {};
}

Case cut_and_choose_case(Rng& rng) {
  const int n = uniform(rng, 1, 8), m = uniform(rng, 0, 10);
  const int n1 = uniform(rng, 0, n);
  std::vector<Valuation> agents;
  for (int a = 0; a < n; ++a) agents.push_back(random_monotone_table(rng, m));
  auto order = random_order(rng, m);
  auto out = cut_and_choose_ef1(agents, n1, n - n1, order);
  const int sizes[] = {n1, n - n1};
  if (!exact_sizes(out.partition, sizes)) return fail("wrong group sizes");
  if (!is_fair(agents, out.allocation, out.partition, Notion::ef1()).overall) return fail("not EF1");
  // The first bundle must be the shortest qualifying prefix.
  const Bundle first = out.allocation.bundles[0];
  const int len = bundle_size(first);
  Bundle prefix = 0;
  for (int i = 0; i <= len; ++i) {
    if (i == len) {
      if (prefix != first) return fail("first bundle is not a prefix of the line");
      break;
    }
    int satisfied = 0;
    for (const auto& v : agents) satisfied += finds_ef1(v, prefix, full_bundle(m) & ~prefix);
    if (satisfied >= n1) return fail("a shorter prefix already satisfies enough agents");
    prefix |= good_bit(order[i]);
  }
  return {};
}

Case prop_case(Rng& rng) {
  const int k = uniform(rng, 1, 5), m = uniform(rng, 0, 12);
  std::vector<int> sizes(k);
  for (int& s : sizes) s = uniform(rng, 1, 3);
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  std::vector<Valuation> agents;
  for (int a = 0; a < n; ++a) agents.push_back(random_additive(rng, m));
  auto out = proportional_k_groups(agents, sizes, random_order(rng, m));
  if (!exact_sizes(out.partition, sizes)) return fail("wrong group sizes");
  if (!validate(out.allocation, m).empty()) return fail("invalid allocation");
  for (int a = 0; a < n; ++a) {
    if (!meets_proportional_bound(agents[a], out.allocation.bundles[out.partition.group_of[a]], k, m)) {
      return fail("bound violated for agent " + std::to_string(a) + " with k=" + std::to_string(k));
    }
  }
  return {};
}

Case round_robin_case(Rng& rng) {
  const int n = uniform(rng, 1, 5), m = uniform(rng, 0, 12);
  std::vector<Valuation> agents;
  for (int a = 0; a < n; ++a) agents.push_back(random_additive(rng, m));
  auto alloc = round_robin(agents, m);
  if (!is_balanced(alloc)) return fail("unbalanced bundles");
  AgentPartition singletons{std::vector<int>(n), n};
  std::iota(singletons.group_of.begin(), singletons.group_of.end(), 0);
  if (!is_fair(agents, alloc, singletons, Notion::ef1()).overall) return fail("not pairwise EF1");
  return {};
}

Case five_agents_case(Rng& rng, const SearchOptions& opts) {
  const int n1 = uniform(rng, 1, 4);
  std::vector<Valuation> agents;
  for (int a = 0; a < 5; ++a) agents.push_back(random_monotone_table(rng, 4));
  auto inst = two_group_instance(std::move(agents), n1, 4);
  SearchConstraints cons;
  cons.balanced_allocation = true;
  if (!find_fair(inst, cons, opts).found()) return fail("no balanced EF1 allocation with n1=" + std::to_string(n1));
  return {};
}

Case reduction_case(Rng& rng, const SearchOptions& opts, SuiteResult& res) {
  auto f = random_monotone_formula(rng, 10, 12);
  const bool sat = brute_force_satisfiable(f);
  res.counters[sat ? "satisfiable" : "unsatisfiable"]++;
  auto inst = formula_to_instance(f);
  auto cert = find_fair(inst, SearchConstraints{}, opts);
  if (cert.found() != sat) return fail("satisfiability and EF1 existence disagree:\n" + to_dimacs(f));
  if (sat && !satisfies(f, allocation_to_assignment(f, cert.witness().allocation))) {
    return fail("EF1 witness does not map to a satisfying assignment");
  }
  return {};
}

Case hierarchy_case(Rng& rng, SuiteResult& res) {
  const int k = uniform(rng, 2, 3), m = uniform(rng, 1, 8);
  const bool binary = uniform(rng, 0, 1) == 1;
  Instance inst;
  inst.num_goods = m;
  FixedGroups g;
  for (int i = 0; i < k; ++i) {
    g.members.emplace_back();
    for (int j = uniform(rng, 1, 2); j > 0; --j) {
      g.members.back().push_back(inst.num_agents());
      inst.agents.push_back(binary ? random_binary(rng, m) : random_additive(rng, m));
    }
  }
  inst.groups = g;
  auto alloc = random_allocation(rng, m, k);
  const std::vector<Notion> chain = {Notion::ef(), Notion::efx0(), Notion::efx(), Notion::ef1(), Notion::efc(2)};
  for (int i = 0; i < k; ++i) {
    for (AgentId a : g.members[i]) {
      std::vector<bool> holds;
      for (const auto& n : chain) holds.push_back(is_fair_for_agent(inst, alloc, a, i, n).fair);
      for (size_t j = 0; j + 1 < chain.size(); ++j) {
        if (holds[j] && !holds[j + 1]) {
          return fail(to_string(chain[j]) + " holds but " + to_string(chain[j + 1]) + " fails");
        }
      }
      if (binary) {
        ++res.counters["binary_agents"];
        if (holds[2] != holds[3]) return fail("EFX and EF1 differ on a binary valuation");
      }
    }
  }
  return {};
}

using Runner = std::function<Case(Rng&, const SearchOptions&, SuiteResult&)>;

struct Suite {
  const char* name;
  int count;
  Runner run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"binary-5-1", 10000, [](Rng& r, const SearchOptions& o, SuiteResult& s) { return binary_case(r, 5, 1, o, s); }},
      {"binary-3-2", 10000, [](Rng& r, const SearchOptions& o, SuiteResult& s) { return binary_case(r, 3, 2, o, s); }},
      {"exact1", 10000, [](Rng& r, const SearchOptions&, SuiteResult&) { return exact1_case(r); }},
      {"ef1-21", 2000, [](Rng& r, const SearchOptions&, SuiteResult&) { return ef1_two_one_case(r); }},
      {"knife", 2000, [](Rng& r, const SearchOptions&, SuiteResult& s) { return knife_case(r, s); }},
      {"cutchoose", 2000, [](Rng& r, const SearchOptions&, SuiteResult&) { return cut_and_choose_case(r); }},
      {"prop", 2000, [](Rng& r, const SearchOptions&, SuiteResult&) { return prop_case(r); }},
      {"roundrobin", 2000, [](Rng& r, const SearchOptions&, SuiteResult&) { return round_robin_case(r); }},
      {"five-agents", 1000, [](Rng& r, const SearchOptions& o, SuiteResult&) { return five_agents_case(r, o); }},
      {"reduction", 500, [](Rng& r, const SearchOptions& o, SuiteResult& s) { return reduction_case(r, o, s); }},
      {"hierarchy", 5000, [](Rng& r, const SearchOptions&, SuiteResult& s) { return hierarchy_case(r, s); }},
  };
  return all;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (name == s.name) return s;
  }
  throw DataError("unknown fuzz suite: " + name);
}

}  // namespace

Valuation random_additive(Rng& rng, int m, Utility lo, Utility hi) {
  std::uniform_int_distribution<Utility> d(lo, hi);
  std::vector<Utility> v(m);
  for (auto& x : v) x = d(rng);
  return Valuation::additive(std::move(v));
}

Valuation random_binary(Rng& rng, int m) {
  std::vector<Utility> v(m);
  for (auto& x : v) x = static_cast<Utility>(rng() & 1u);
  return Valuation::binary(std::move(v));
}

Valuation random_monotone_table(Rng& rng, int m) {
  std::uniform_int_distribution<Utility> d(0, 9);
  std::vector<Utility> t(size_t{1} << m);
  for (auto& x : t) x = d(rng);
  t[0] = 0;
  for (size_t s = 1; s < t.size(); ++s) {
    for (int g = 0; g < m; ++g) {
      if ((s >> g) & 1u) t[s] = std::max(t[s], t[s & ~(size_t{1} << g)]);
    }
  }
  return Valuation::table(m, std::move(t));
}

MonotoneFormula random_monotone_formula(Rng& rng, int max_vars, int max_clauses) {
  MonotoneFormula f;
  f.num_vars = uniform(rng, 3, std::max(3, max_vars));
  const int c = uniform(rng, 0, max_clauses);
  std::vector<int> vars(f.num_vars);
  std::iota(vars.begin(), vars.end(), 0);
  for (int i = 0; i < c; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    MonotoneClause cl;
    cl.positive = (rng() & 1u) != 0;
    std::copy_n(vars.begin(), 3, cl.vars.begin());
    std::sort(cl.vars.begin(), cl.vars.end());
    f.clauses.push_back(cl);
  }
  return f;
}

std::vector<int> random_order(Rng& rng, int m) {
  auto order = identity_order(m);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

Allocation random_allocation(Rng& rng, int m, int k) {
  Allocation alloc;
  alloc.bundles.assign(k, 0);
  for (int g = 0; g < m; ++g) alloc.bundles[uniform(rng, 0, k - 1)] |= good_bit(g);
  return alloc;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

int default_count(const std::string& suite) { return find_suite(suite).count; }

SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed, const SearchOptions& opts) {
  const auto& suite = find_suite(name);
  SuiteResult res;
  res.name = name;
  res.seed = seed;
  res.count = count;
  Rng rng(seed);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    Case c;
    try {
      c = suite.run(rng, opts, res);
    } catch (const std::exception& e) {
      c = fail(std::string("exception: ") + e.what());
    }
    if (c.pass) {
      ++res.passed;
    } else {
      ++res.failed;
      if (res.failures.size() < 3) res.failures.push_back("case " + std::to_string(i) + ": " + c.why);
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace groupfair
