#include "groupfair/kneser.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace groupfair {

namespace {

using Words = std::vector<std::uint64_t>;

bool test(const Words& w, int v) { return (w[v / 64] >> (v % 64)) & 1u; }
void reset(Words& w, int v) { w[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
int count(const Words& w) {
  int c = 0;
  for (auto x : w) c += __builtin_popcountll(x);
  return c;
}
bool none(const Words& w) {
  return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

Words intersect(const Words& a, const std::uint64_t* row) {
  Words out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & row[i];
  return out;
}

Words all_vertices(int n, int words) {
  Words w(words, 0);
  for (int v = 0; v < n; ++v) w[v / 64] |= std::uint64_t{1} << (v % 64);
  return w;
}

std::vector<int> max_clique(const KneserGraph& g) {
  std::vector<int> best, cur;
  auto expand = [&](auto&& self, Words cand) -> void {
    if (none(cand)) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!test(cand, v)) continue;
      if (cur.size() + count(cand) <= best.size()) return;
      cur.push_back(v);
      self(self, intersect(cand, g.row(v)));
      cur.pop_back();
      reset(cand, v);
    }
  };
  expand(expand, all_vertices(g.num_vertices(), g.words()));
  return best;
}

std::vector<int> greedy_clique(const KneserGraph& g) {
  std::vector<int> clique;
  Words cand = all_vertices(g.num_vertices(), g.words());
  while (!none(cand)) {
    int pick = -1, pick_deg = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!test(cand, v)) continue;
      int d = count(intersect(cand, g.row(v)));
      if (d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    clique.push_back(pick);
    cand = intersect(cand, g.row(pick));
  }
  return clique;
}

Coloring greedy_coloring(const KneserGraph& g, const std::vector<int>& order) {
  const int n = g.num_vertices();
  Coloring c;
  c.colors.assign(n, -1);
  std::vector<char> used;
  for (int v : order) {
    used.assign(n + 1, 0);
    for (int u = 0; u < n; ++u) {
      if (c.colors[u] >= 0 && g.adjacent(u, v)) used[c.colors[u]] = 1;
    }
    int col = 0;
    while (used[col]) ++col;
    c.colors[v] = col;
    c.num_colors = std::max(c.num_colors, col + 1);
  }
  return c;
}

std::vector<int> by_degree(const KneserGraph& g) {
  std::vector<int> order(g.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  return order;
}

// DSATUR branch and bound. Clique vertices are precolored 0..|clique|-1.
class ExactColoring {
 public:
  ExactColoring(const KneserGraph& g, std::vector<int> clique, Coloring initial)
      : g_(g), n_(g.num_vertices()), clique_(std::move(clique)), best_(std::move(initial)) {
    nbrs_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      for (int u = 0; u < n_; ++u) {
        if (g.adjacent(v, u)) nbrs_[v].push_back(u);
      }
    }
    color_.assign(n_, -1);
    nbr_count_.assign(static_cast<size_t>(n_) * (n_ + 1), 0);
    sat_.assign(n_, 0);
  }

  Coloring run() {
    const int lb = static_cast<int>(clique_.size());
    lower_ = lb;
    if (best_.num_colors > lb) {
      for (int i = 0; i < lb; ++i) assign(clique_[i], i);
      search(lb, lb);
    }
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void assign(int v, int c) {
    color_[v] = c;
    for (int u : nbrs_[v]) {
      if (nbr_count_[u * (n_ + 1) + c]++ == 0) ++sat_[u];
    }
  }
  void unassign(int v, int c) {
    color_[v] = -1;
    for (int u : nbrs_[v]) {
      if (--nbr_count_[u * (n_ + 1) + c] == 0) --sat_[u];
    }
  }

  int pick() const {
    int best = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      int deg = 0;
      for (int u : nbrs_[v]) deg += color_[u] < 0;
      if (sat_[v] > best_sat || (sat_[v] == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat_[v];
        best_deg = deg;
      }
    }
    return best;
  }

  void search(int colored, int used) {
    ++nodes_;
    if (best_.num_colors == lower_) return;
    if (colored == n_) {
      best_.colors = color_;
      best_.num_colors = used;
      return;
    }
    const int v = pick();
    for (int c = 0; c < used; ++c) {
      if (nbr_count_[v * (n_ + 1) + c]) continue;
      assign(v, c);
      search(colored + 1, used);
      unassign(v, c);
      if (best_.num_colors == lower_) return;
    }
    if (used + 1 < best_.num_colors) {
      assign(v, used);
      search(colored + 1, used + 1);
      unassign(v, used);
    }
  }

  const KneserGraph& g_;
  int n_;
  std::vector<int> clique_;
  Coloring best_;
  int lower_ = 0;
  std::vector<std::vector<int>> nbrs_;
  std::vector<int> color_;
  std::vector<int> nbr_count_;
  std::vector<int> sat_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

KneserGraph::KneserGraph(int b, int r, int s) : b_(b), r_(r), s_(s) {
  if (!(b >= r && r >= s && s >= 1) || b > kMaxGoods) {
    throw DataError("generalized Kneser graph requires b >= r >= s >= 1 and b <= 32");
  }
  double count = 1;
  for (int i = 1; i <= r; ++i) count = count * (b - r + i) / i;
  if (count > kMaxKneserVertices) {
    throw DataError("K(" + std::to_string(b) + "," + std::to_string(r) + "," + std::to_string(s) + ") has " +
                    std::to_string(static_cast<long long>(count)) + " vertices, limit is 10000");
  }
  std::vector<int> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Bundle v = 0;
    for (int e : pick) v |= good_bit(e);
    vertices_.push_back(v);
    int i = r - 1;
    while (i >= 0 && pick[i] == b - r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  const int n = num_vertices();
  words_ = (n + 63) / 64;
  rows_.assign(static_cast<size_t>(n) * words_, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && bundle_size(vertices_[u] & vertices_[v]) <= s - 1) {
        rows_[static_cast<size_t>(u) * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }
}

int KneserGraph::degree(int v) const {
  int d = 0;
  for (int i = 0; i < words_; ++i) d += __builtin_popcountll(row(v)[i]);
  return d;
}

std::int64_t KneserGraph::num_edges() const {
  std::int64_t total = 0;
  for (int v = 0; v < num_vertices(); ++v) total += degree(v);
  return total / 2;
}

bool is_proper(const KneserGraph& g, const Coloring& c) {
  const int n = g.num_vertices();
  if (static_cast<int>(c.colors.size()) != n) return false;
  std::vector<char> used(std::max(c.num_colors, 0), 0);
  for (int v = 0; v < n; ++v) {
    if (c.colors[v] < 0 || c.colors[v] >= c.num_colors) return false;
    used[c.colors[v]] = 1;
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) return false;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v) && c.colors[u] == c.colors[v]) return false;
    }
  }
  return true;
}

ChromaticBounds chromatic_number(const KneserGraph& g, ChiMode mode) {
  ChromaticBounds out;
  int max_deg = 0;
  for (int v = 0; v < g.num_vertices(); ++v) max_deg = std::max(max_deg, g.degree(v));
  out.degree_bound = g.num_vertices() == 0 ? 0 : max_deg + 1;
  Coloring greedy = greedy_coloring(g, by_degree(g));

  if (mode == ChiMode::bounds) {
    out.lower = static_cast<int>(greedy_clique(g).size());
    out.upper = greedy.num_colors;
    out.coloring = std::move(greedy);
    return out;
  }
  if (g.num_vertices() > kMaxExactColoringVertices) {
    throw TooLargeError("exact coloring supports at most 70 vertices", g.num_vertices());
  }
  auto clique = max_clique(g);
  ExactColoring solver(g, clique, std::move(greedy));
  out.coloring = solver.run();
  out.nodes = solver.nodes();
  out.lower = out.upper = out.coloring.num_colors;
  return out;
}

Instance tightness_instance(const KneserGraph& g, const Coloring& c, int n1, int n2) {
  if (g.b() != 2 * g.r() || g.s() != 2) throw DataError("tightness construction needs K(2t, t, 2)");
  if (!is_proper(g, c)) throw DataError("coloring is not proper");
  if (n1 < 0 || n2 < 0 || n1 + n2 != c.num_colors) throw DataError("split must sum to the number of colors");
  const int m = g.b();
  if (m > kMaxTableGoods) throw DataError("too many goods for table valuations");

  Instance inst;
  inst.num_goods = m;
  FixedGroups groups{{{}, {}}};
  const Bundle all = full_bundle(m);
  for (int color = 0; color < c.num_colors; ++color) {
    const int group = color < n1 ? 0 : 1;
    groups.members[group].push_back(color);
    // Worthless bundles: subsets of the agent's own-group bundle in each
    // allocation of this color (vertex = first group's bundle).
    std::vector<Utility> table(size_t{1} << m, 1);
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (c.colors[v] != color) continue;
      const Bundle own = group == 0 ? g.vertex(v) : all & ~g.vertex(v);
      for (Bundle sub = own;; sub = (sub - 1) & own) {
        table[sub] = 0;
        if (sub == 0) break;
      }
    }
    inst.agents.push_back(Valuation::table(m, std::move(table)));
  }
  inst.groups = std::move(groups);
  return inst;
}

std::string to_dimacs(const KneserGraph& g) {
  std::ostringstream os;
  os << "c generalized Kneser graph K(" << g.b() << "," << g.r() << "," << g.s() << ")\n";
  os << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (int u = 0; u < g.num_vertices(); ++u) {
    for (int v = u + 1; v < g.num_vertices(); ++v) {
      if (g.adjacent(u, v)) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
  }
  return os.str();
}

}  // namespace groupfair
