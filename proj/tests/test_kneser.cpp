#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "groupfair/fairness.hpp"
#include "groupfair/kneser.hpp"
#include "groupfair/oracle.hpp"

using namespace groupfair;

namespace {

// Chromatic number of K(6,3,2), fixed after the first exact computation.
constexpr int kChiK632 = 6;
// Chromatic number of K(8,4,2), same provenance.
constexpr int kChiK842 = 6;

long long choose(int n, int r) {
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

int intersection(Bundle a, Bundle b) {
  int c = 0;
  for (int g = 0; g < 32; ++g) c += ((a >> g) & 1u) && ((b >> g) & 1u);
  return c;
}

bool balanced_ef1_exists(const Instance& inst, const Notion& n = Notion::ef1()) {
  SearchConstraints cons;
  cons.balanced_allocation = true;
  cons.notion = n;
  return find_fair(inst, cons).found();
}

}  // namespace

TEST_CASE("construction") {
  SUBCASE("K(4,2,2) is complete on six vertices") {
    KneserGraph g(4, 2, 2);
    CHECK(g.num_vertices() == 6);
    CHECK(g.num_edges() == 15);
  }
  SUBCASE("K(b,r,r) is complete") {
    for (auto [b, r] : {std::pair{5, 2}, {6, 3}, {7, 1}}) {
      KneserGraph g(b, r, r);
      CHECK(g.num_vertices() == choose(b, r));
      CHECK(g.num_edges() == choose(b, r) * (choose(b, r) - 1) / 2);
    }
  }
  SUBCASE("K(6,3,2) sample edges") {
    KneserGraph g(6, 3, 2);
    CHECK(g.num_vertices() == 20);
    CHECK(g.vertex(0) == 0b000111u);
    auto index_of = [&](Bundle b) {
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.vertex(v) == b) return v;
      }
      return -1;
    };
    CHECK(g.adjacent(index_of(0b000111), index_of(0b011001)));
    CHECK_FALSE(g.adjacent(index_of(0b000111), index_of(0b001011)));
  }
  SUBCASE("vertices in lexicographic order") {
    KneserGraph g(5, 2, 1);
    std::vector<std::vector<int>> lists;
    for (Bundle v : g.vertices()) lists.push_back(bundle_goods(v));
    CHECK(std::is_sorted(lists.begin(), lists.end()));
    CHECK(lists.front() == std::vector<int>{0, 1});
    CHECK(lists.back() == std::vector<int>{3, 4});
  }
  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(KneserGraph(3, 4, 1), DataError);
    CHECK_THROWS_AS(KneserGraph(4, 2, 3), DataError);
    CHECK_THROWS_AS(KneserGraph(4, 2, 0), DataError);
    CHECK_THROWS_AS(KneserGraph(30, 15, 2), DataError);
  }
}

TEST_CASE("adjacency matches set intersection") {
  for (auto [b, r, s] : {std::tuple{6, 3, 2}, {7, 3, 1}, {8, 4, 2}, {7, 4, 3}}) {
    KneserGraph g(b, r, s);
    for (int u = 0; u < g.num_vertices(); ++u) {
      CHECK_FALSE(g.adjacent(u, u));
      for (int v = 0; v < g.num_vertices(); ++v) {
        CHECK(g.adjacent(u, v) == g.adjacent(v, u));
        if (u != v) CHECK(g.adjacent(u, v) == (intersection(g.vertex(u), g.vertex(v)) <= s - 1));
      }
    }
  }
}

TEST_CASE("chromatic numbers") {
  SUBCASE("K(4,2,2) is 6") {
    auto res = chromatic_number(KneserGraph(4, 2, 2), ChiMode::exact);
    CHECK(res.lower == 6);
    CHECK(res.upper == 6);
  }
  SUBCASE("complete graphs") {
    auto res = chromatic_number(KneserGraph(6, 2, 2), ChiMode::exact);
    CHECK(res.upper == 15);
  }
  SUBCASE("K(6,3,2) regression") {
    KneserGraph g(6, 3, 2);
    auto res = chromatic_number(g, ChiMode::exact);
    CHECK(res.lower == kChiK632);
    CHECK(res.upper == kChiK632);
    CHECK(is_proper(g, res.coloring));
  }
  SUBCASE("K(8,4,2) regression") {
    KneserGraph g(8, 4, 2);
    auto res = chromatic_number(g, ChiMode::exact);
    CHECK(res.upper == kChiK842);
    CHECK(is_proper(g, res.coloring));
  }
  SUBCASE("Kneser graph K(5,2,1) is the Petersen graph") {
    auto res = chromatic_number(KneserGraph(5, 2, 1), ChiMode::exact);
    CHECK(res.upper == 3);
  }
  SUBCASE("bounds bracket the exact value and greedy respects the degree bound") {
    for (auto [b, r, s] : {std::tuple{6, 3, 2}, {8, 4, 2}, {7, 3, 1}, {7, 3, 2}, {9, 4, 2}}) {
      KneserGraph g(b, r, s);
      auto bounds = chromatic_number(g, ChiMode::bounds);
      CHECK(is_proper(g, bounds.coloring));
      CHECK(bounds.upper <= bounds.degree_bound);
      CHECK(bounds.lower <= bounds.upper);
      if (g.num_vertices() <= kMaxExactColoringVertices) {
        auto exact = chromatic_number(g, ChiMode::exact);
        CHECK(bounds.lower <= exact.upper);
        CHECK(exact.upper <= bounds.upper);
      }
    }
  }
  SUBCASE("exact mode budget") {
    CHECK_THROWS_AS(chromatic_number(KneserGraph(9, 4, 2), ChiMode::exact), TooLargeError);
  }
}

TEST_CASE("coloring properness") {
  KneserGraph g(4, 2, 2);
  Coloring c{{0, 1, 2, 3, 4, 5}, 6};
  CHECK(is_proper(g, c));
  Coloring clash{{0, 0, 1, 2, 3, 4}, 5};
  CHECK_FALSE(is_proper(g, clash));
  Coloring unused{{0, 1, 2, 3, 4, 5}, 7};
  CHECK_FALSE(is_proper(g, unused));
}

TEST_CASE("tightness construction") {
  KneserGraph g(4, 2, 2);
  auto coloring = chromatic_number(g, ChiMode::exact).coloring;
  SUBCASE("every split of six agents has no balanced EF1 allocation") {
    for (int n1 = 0; n1 <= 6; ++n1) {
      auto inst = tightness_instance(g, coloring, n1, 6 - n1);
      CAPTURE(n1);
      CHECK(validate(inst).empty());
      CHECK(inst.group_sizes() == std::vector<int>{n1, 6 - n1});
      CHECK_FALSE(balanced_ef1_exists(inst));
      CHECK_FALSE(balanced_ef1_exists(inst, Notion::ef()));
    }
  }
  SUBCASE("dropping any agent restores existence") {
    auto inst = tightness_instance(g, coloring, 3, 3);
    for (int drop = 0; drop < 6; ++drop) {
      Instance smaller;
      smaller.num_goods = 4;
      FixedGroups fg{{{}, {}}};
      for (int a = 0; a < 6; ++a) {
        if (a == drop) continue;
        fg.members[a < 3 ? 0 : 1].push_back(smaller.num_agents());
        smaller.agents.push_back(inst.agents[a]);
      }
      smaller.groups = fg;
      CHECK(balanced_ef1_exists(smaller));
    }
  }
  SUBCASE("K(6,3,2) coloring also gives an impossible instance") {
    KneserGraph g6(6, 3, 2);
    auto c6 = chromatic_number(g6, ChiMode::exact).coloring;
    auto inst = tightness_instance(g6, c6, 3, 3);
    CHECK(validate(inst).empty());
    CHECK_FALSE(balanced_ef1_exists(inst));
  }
  SUBCASE("errors") {
    Coloring clash{{0, 0, 1, 2, 3, 4}, 5};
    CHECK_THROWS_AS(tightness_instance(g, clash, 3, 2), DataError);
    CHECK_THROWS_AS(tightness_instance(g, coloring, 3, 2), DataError);
    KneserGraph wrong(5, 2, 2);
    CHECK_THROWS_AS(tightness_instance(wrong, chromatic_number(wrong, ChiMode::exact).coloring, 5, 5), DataError);
  }
}

TEST_CASE("DIMACS export") {
  KneserGraph g(4, 2, 2);
  std::istringstream in(to_dimacs(g));
  std::string line;
  int edges = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("p edge 6 15", 0) == 0) header = true;
    if (line.rfind("e ", 0) == 0) ++edges;
  }
  CHECK(header);
  CHECK(edges == 15);
}
