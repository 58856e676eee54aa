#pragma once

// Generalized Kneser graphs K(b, r, s): vertices are the r-subsets of a b-set
// (as bitmasks, lexicographic order), adjacent when they share at most s-1
// elements. Balanced two-group allocations of 2t goods are the vertices of
// K(2t, t, 2), which ties proper colorings to balanced EF1 impossibility.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupfair/model.hpp"

namespace groupfair {

inline constexpr int kMaxKneserVertices = 10000;
inline constexpr int kMaxExactColoringVertices = 70;

class KneserGraph {
 public:
  /// Requires b >= r >= s >= 1, b <= 32 and C(b, r) <= kMaxKneserVertices.
  KneserGraph(int b, int r, int s);

  int b() const { return b_; }
  int r() const { return r_; }
  int s() const { return s_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  /// The r-subset of vertex v.
  Bundle vertex(int v) const { return vertices_[v]; }
  const std::vector<Bundle>& vertices() const { return vertices_; }

  bool adjacent(int u, int v) const { return (rows_[u * words_ + v / 64] >> (v % 64)) & 1u; }
  int degree(int v) const;
  std::int64_t num_edges() const;
  /// Adjacency row of v as 64-bit words.
  const std::uint64_t* row(int v) const { return &rows_[static_cast<size_t>(v) * words_]; }
  int words() const { return words_; }

 private:
  int b_, r_, s_;
  int words_ = 0;
  std::vector<Bundle> vertices_;
  std::vector<std::uint64_t> rows_;
};

struct Coloring {
  std::vector<int> colors;
  int num_colors = 0;
};

/// No monochromatic edge, colors in range and every color used.
bool is_proper(const KneserGraph& g, const Coloring& c);

enum class ChiMode { exact, bounds };

struct ChromaticBounds {
  int lower = 0;
  int upper = 0;
  /// Coloring achieving `upper`.
  Coloring coloring;
  /// Maximum degree + 1, an upper bound that ignores clique structure.
  int degree_bound = 0;
  std::uint64_t nodes = 0;
};

/// Exact mode: lower == upper == chi, via DSATUR branch and bound seeded with a
/// maximum clique. Bounds mode: greedy clique lower bound and largest-degree-first
/// greedy upper bound. Exact mode throws TooLargeError past kMaxExactColoringVertices.
ChromaticBounds chromatic_number(const KneserGraph& g, ChiMode mode);

/// One agent per color over 2t goods for a proper coloring of K(2t, t, 2); the
/// first n1 colors form group 0 and the rest group 1. The result has no
/// balanced EF1 allocation.
Instance tightness_instance(const KneserGraph& g, const Coloring& c, int n1, int n2);

/// DIMACS edge format, vertices numbered from 1.
std::string to_dimacs(const KneserGraph& g);

}  // namespace groupfair
