#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "groupfair/fairness.hpp"
#include "groupfair/fuzz.hpp"
#include "groupfair/oracle.hpp"
#include "groupfair/reduction.hpp"

using namespace groupfair;

namespace {

MonotoneFormula both_signs_on(int v, const std::vector<std::array<int, 3>>& triples) {
  MonotoneFormula f;
  f.num_vars = v;
  for (bool positive : {true, false}) {
    for (const auto& t : triples) f.clauses.push_back({positive, t});
  }
  return f;
}

// Lines of the Fano plane: every 2-coloring of its points leaves a
// monochromatic line, so requiring each line to contain both values fails.
MonotoneFormula fano() {
  return both_signs_on(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

MonotoneFormula all_triples_of_five() {
  std::vector<std::array<int, 3>> t;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      for (int c = b + 1; c < 5; ++c) t.push_back({a, b, c});
    }
  }
  return both_signs_on(5, t);
}

bool ef1_exists(const MonotoneFormula& f) { return find_fair(formula_to_instance(f), SearchConstraints{}).found(); }

}  // namespace

TEST_CASE("one positive and one negative clause on three variables") {
  MonotoneFormula f{3, {{true, {0, 1, 2}}, {false, {0, 1, 2}}}};
  auto inst = formula_to_instance(f);
  CHECK(inst.num_goods == 3);
  CHECK(inst.group_sizes() == std::vector<int>{1, 1});
  for (const auto& v : inst.agents) {
    CHECK(v.kind() == ValuationKind::binary);
    CHECK(v.value(0b111) == 3);
  }
  CHECK(brute_force_satisfiable(f));
  CHECK(ef1_exists(f));
}

TEST_CASE("empty formula: every allocation is EF1") {
  MonotoneFormula f{4, {}};
  auto inst = formula_to_instance(f);
  CHECK(inst.num_goods == 4);
  CHECK(inst.num_agents() == 0);
  for (std::uint64_t i = 0; i < 16; ++i) CHECK(is_fair(inst, decode_allocation(i, 4, 2), Notion::ef1()).overall);
}

TEST_CASE("invalid formulas are rejected") {
  CHECK_THROWS_AS(formula_to_instance(MonotoneFormula{3, {{true, {0, 0, 1}}}}), DataError);
  CHECK_THROWS_AS(formula_to_instance(MonotoneFormula{3, {{true, {0, 1, 3}}}}), DataError);
}

TEST_CASE("assignment and allocation bridge") {
  MonotoneFormula f{4, {{true, {0, 1, 2}}, {false, {1, 2, 3}}}};
  SUBCASE("all true") {
    auto alloc = assignment_to_allocation(f, {true, true, true, true});
    CHECK(alloc.bundles == std::vector<Bundle>{0b1111, 0});
  }
  SUBCASE("round trip") {
    for (unsigned bits = 0; bits < 16; ++bits) {
      std::vector<bool> a(4);
      for (int x = 0; x < 4; ++x) a[x] = (bits >> x) & 1u;
      CHECK(allocation_to_assignment(f, assignment_to_allocation(f, a)) == a);
    }
  }
  SUBCASE("satisfying assignments are exactly the EF1 allocations") {
    auto inst = formula_to_instance(f);
    for (unsigned bits = 0; bits < 16; ++bits) {
      std::vector<bool> a(4);
      for (int x = 0; x < 4; ++x) a[x] = (bits >> x) & 1u;
      CHECK(satisfies(f, a) == is_fair(inst, assignment_to_allocation(f, a), Notion::ef1()).overall);
    }
  }
  SUBCASE("length mismatch") { CHECK_THROWS_AS(assignment_to_allocation(f, {true}), DataError); }
}

TEST_CASE("an agent is EF1 iff its group holds one of its goods") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_monotone_formula(rng, 8, 10);
    auto inst = formula_to_instance(f);
    auto alloc = random_allocation(rng, f.num_vars, 2);
    auto report = is_fair(inst, alloc, Notion::ef1());
    const auto& groups = inst.fixed().members;
    for (int g = 0; g < 2; ++g) {
      for (AgentId a : groups[g]) {
        const bool holds_one = inst.agents[a].value(alloc.bundles[g]) >= 1;
        CHECK(report.agents[a].fair == holds_one);
      }
    }
  }
}

TEST_CASE("unsatisfiable formulas give instances without EF1 allocations") {
  for (const auto& f : {fano(), all_triples_of_five()}) {
    CHECK_FALSE(brute_force_satisfiable(f));
    CHECK_FALSE(ef1_exists(f));
  }
  // Removing one clause of the Fano pair makes it satisfiable again.
  auto g = fano();
  g.clauses.pop_back();
  CHECK(brute_force_satisfiable(g));
  CHECK(ef1_exists(g));
}

TEST_CASE("satisfiability and EF1 existence agree on random formulas") {
  auto res = run_suite("reduction", 300, 5);
  CHECK(res.ok());
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    // Denser formulas on few variables reach the unsatisfiable side.
    auto f = random_monotone_formula(rng, 7, 30);
    CHECK(brute_force_satisfiable(f) == ef1_exists(f));
  }
}

TEST_CASE("DIMACS parsing") {
  SUBCASE("round trip") {
    auto f = fano();
    std::istringstream in("c comment\n" + to_dimacs(f));
    CHECK(parse_monotone_dimacs(in) == f);
  }
  SUBCASE("clauses may span lines") {
    std::istringstream in("p cnf 3 2\n1 2\n3 0 -1 -2 -3\n0\n");
    auto f = parse_monotone_dimacs(in);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1].positive == false);
  }
  SUBCASE("errors") {
    auto bad = [](const std::string& text) {
      std::istringstream in(text);
      CHECK_THROWS_AS(parse_monotone_dimacs(in), DataError);
    };
    bad("1 2 3 0\n");
    bad("p cnf 3 1\n1 -2 3 0\n");
    bad("p cnf 3 1\n1 2 0\n");
    bad("p cnf 3 1\n1 1 2 0\n");
    bad("p cnf 3 1\n1 2 4 0\n");
    bad("p cnf 3 2\n1 2 3 0\n");
    bad("p cnf 3 1\n1 2 3\n");
    bad("p cnf 3 1\n1 2 x 0\n");
  }
}
