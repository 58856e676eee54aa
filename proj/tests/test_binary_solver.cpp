#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "groupfair/binary_solver.hpp"
#include "groupfair/corpus.hpp"
#include "groupfair/fairness.hpp"
#include "groupfair/fuzz.hpp"
#include "support/reference.hpp"

using namespace groupfair;

namespace {

Instance binary_instance(int m, std::vector<std::vector<Utility>> rows, int n1) {
  Instance inst;
  inst.num_goods = m;
  FixedGroups g{{{}, {}}};
  for (size_t a = 0; a < rows.size(); ++a) {
    g.members[static_cast<int>(a) < n1 ? 0 : 1].push_back(static_cast<int>(a));
    inst.agents.push_back(Valuation::binary(rows[a]));
  }
  inst.groups = g;
  return inst;
}

Instance random_binary_instance(Rng& rng, int n1, int n2, int max_m) {
  const int m = static_cast<int>(rng() % (max_m + 1));
  std::vector<std::vector<Utility>> rows;
  for (int a = 0; a < n1 + n2; ++a) {
    auto v = random_binary(rng, m);
    rows.emplace_back(v.good_values().begin(), v.good_values().end());
  }
  return binary_instance(m, rows, n1);
}

}  // namespace

TEST_CASE("binary good representation") {
  auto inst = binary_instance(2, {{1, 0}, {1, 1}, {0, 1}}, 2);
  auto goods = binary_goods(inst);
  CHECK(goods[0].desirers_first == 0b11u);
  CHECK(goods[0].desirers_second == 0u);
  CHECK(goods[1].desirers_first == 0b10u);
  CHECK(goods[1].desirers_second == 0b1u);
}

TEST_CASE("good undesired by the singleton goes to the large group") {
  auto inst = binary_instance(2, {{1, 1}, {1, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 1}}, 5);
  auto pre = preprocess(inst);
  REQUIRE_FALSE(pre.trace.steps.empty());
  const auto& s = pre.trace.steps[0];
  CHECK(s.rule == ReductionRule::undesired);
  CHECK(s.to_first == 0b01u);
  CHECK(s.to_second == 0u);
}

TEST_CASE("dominating good goes to the large group, dominated good to the singleton") {
  // g1 desired by agents {0,1,2} of A and by b; g2 only by agent 0 of A and by b.
  auto inst = binary_instance(2, {{1, 1}, {1, 0}, {1, 0}, {0, 0}, {0, 0}, {1, 1}}, 5);
  auto pre = preprocess(inst);
  REQUIRE_FALSE(pre.trace.steps.empty());
  const auto& s = pre.trace.steps[0];
  CHECK(s.rule == ReductionRule::pair_dominance);
  CHECK(s.to_first == 0b01u);
  CHECK(s.to_second == 0b10u);
  CHECK(pre.remaining_goods.empty());
}

TEST_CASE("empty instance") {
  auto inst = binary_instance(0, {{}, {}}, 1);
  auto pre = preprocess(inst);
  CHECK(pre.trace.steps.empty());
  auto res = solve_ef1_binary(inst);
  REQUIRE(res.allocation);
  CHECK(res.allocation->bundles == std::vector<Bundle>{0, 0});
  CHECK(res.reduction_complete);
}

TEST_CASE("(6,1) instance has no EF1 allocation") {
  auto res = solve_ef1_binary(ef1_six_one_instance());
  CHECK_FALSE(res.allocation);
  REQUIRE(res.certificate);
  CHECK_FALSE(res.certificate->found());
  CHECK(res.certificate->examined() == 16);
  CHECK_FALSE(res.guaranteed_shape);
}

TEST_CASE("non-binary input is rejected") {
  auto inst = efx_additive_two_one_instance();
  CHECK_THROWS_AS(preprocess(inst), UnsupportedError);
}

TEST_CASE("guaranteed shapes") {
  CHECK(is_guaranteed_shape(5, 1));
  CHECK(is_guaranteed_shape(1, 5));
  CHECK(is_guaranteed_shape(3, 2));
  CHECK(is_guaranteed_shape(2, 2));
  CHECK_FALSE(is_guaranteed_shape(6, 1));
  CHECK_FALSE(is_guaranteed_shape(4, 2));
  CHECK_FALSE(is_guaranteed_shape(3, 3));
}

TEST_CASE("trace replay reproduces the partial allocation") {
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    auto inst = random_binary_instance(rng, 1 + rng() % 5, 1 + rng() % 3, 9);
    auto pre = preprocess(inst);
    CHECK(pre.trace.replay() == pre.partial);
    Bundle assigned = pre.partial.bundles[0] | pre.partial.bundles[1];
    CHECK((assigned & pre.partial.bundles[0] & pre.partial.bundles[1]) == 0u);
    CHECK(bundle_size(assigned) + static_cast<int>(pre.remaining_goods.size()) == inst.num_goods);
  }
}

TEST_CASE("perturbing one desired good: only perturbed EF1 implies original EF1") {
  SUBCASE("counterexample to full agreement") {
    // Desires {a,b,c}; own bundle {a}, other {b,c}. Undesiring a flips the verdict.
    auto original = Valuation::binary({1, 1, 1});
    auto perturbed = Valuation::binary({0, 1, 1});
    CHECK(finds_ef1(original, 0b001, 0b110));
    CHECK_FALSE(finds_ef1(perturbed, 0b001, 0b110));
  }
  SUBCASE("implication holds on all allocations") {
    Rng rng(10);
    for (int trial = 0; trial < 400; ++trial) {
      const int m = 1 + static_cast<int>(rng() % 8);
      auto v = random_binary(rng, m);
      std::vector<Utility> vals(v.good_values().begin(), v.good_values().end());
      int desired = 0, lowest = -1;
      for (int g = 0; g < m; ++g) {
        if (vals[g]) {
          ++desired;
          if (lowest < 0) lowest = g;
        }
      }
      if (desired % 2 == 0) continue;
      vals[lowest] = 0;
      auto p = Valuation::binary(vals);
      for (Bundle own = 0; own <= full_bundle(m); ++own) {
        const Bundle other = full_bundle(m) & ~own;
        if (finds_ef1(p, own, other)) CHECK(finds_ef1(v, own, other));
      }
    }
  }
}

TEST_CASE("reductions are sound: a reduced EF1 completion extends") {
  Rng rng(12);
  const std::pair<int, int> shapes[] = {{2, 2}, {4, 1}, {3, 3}, {4, 2}, {6, 1}, {2, 1}};
  for (int trial = 0; trial < 600; ++trial) {
    const auto [n1, n2] = shapes[trial % 6];
    auto inst = random_binary_instance(rng, n1, n2, 8);
    auto pre = preprocess(inst);
    auto reduced = find_fair(pre.reduced, SearchConstraints{});
    if (!reduced.found()) continue;
    Allocation ext = pre.partial;
    for (size_t i = 0; i < pre.remaining_goods.size(); ++i) {
      const int side = contains(reduced.witness().allocation.bundles[0], static_cast<int>(i)) ? 0 : 1;
      ext.bundles[side] |= good_bit(pre.remaining_goods[i]);
    }
    CHECK(is_fair(inst, ext, Notion::ef1()).overall);
  }
}

TEST_CASE("solver agrees with the reference search on every shape") {
  Rng rng(13);
  const std::pair<int, int> shapes[] = {{5, 1}, {3, 2}, {6, 1}, {4, 2}, {3, 3}, {1, 1}};
  for (int trial = 0; trial < 600; ++trial) {
    const auto [n1, n2] = shapes[trial % 6];
    auto inst = random_binary_instance(rng, n1, n2, 7);
    auto res = solve_ef1_binary(inst);
    auto expect = ref::search(inst, false, false, Notion::ef1());
    CHECK(res.allocation.has_value() == expect.found);
    if (res.allocation) {
      CHECK(ref::all_fair(inst.agents, partition_of(inst.fixed(), inst.num_agents()).group_of,
                          res.allocation->bundles, Notion::ef1()));
    }
    if (res.guaranteed_shape) CHECK_FALSE(res.assertion_fired);
  }
}

TEST_CASE("guaranteed shapes reduce completely") {
  for (const char* suite : {"binary-5-1", "binary-3-2"}) {
    auto res = run_suite(suite, 2000, 31);
    CAPTURE(suite);
    CHECK(res.ok());
    CHECK(res.counters["fallback"] == 0);
  }
}
