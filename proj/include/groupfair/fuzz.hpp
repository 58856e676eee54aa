#pragma once

// Seeded random inputs and the property suites behind `fuzz` and the
// acceptance checks. Every suite is reproducible from (name, count, seed).

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "groupfair/model.hpp"
#include "groupfair/oracle.hpp"
#include "groupfair/reduction.hpp"

namespace groupfair {

using Rng = std::mt19937_64;

/// Uniform values in lo..hi.
Valuation random_additive(Rng& rng, int m, Utility lo = 0, Utility hi = 9);
/// Uniform desire bits.
Valuation random_binary(Rng& rng, int m);
/// Random base values in 0..9 with maxima propagated up the subset lattice and u(empty) = 0.
Valuation random_monotone_table(Rng& rng, int m);
MonotoneFormula random_monotone_formula(Rng& rng, int max_vars, int max_clauses);
std::vector<int> random_order(Rng& rng, int m);
Allocation random_allocation(Rng& rng, int m, int k);

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  int count = 0;
  int passed = 0;
  int failed = 0;
  /// Suite-specific tallies, e.g. fallback firings.
  std::map<std::string, std::uint64_t> counters;
  /// At most a few failure descriptions.
  std::vector<std::string> failures;
  double seconds = 0;
  bool ok() const { return failed == 0 && passed == count; }
};

std::vector<std::string> suite_names();
int default_count(const std::string& suite);
/// Throws DataError for unknown suites.
SuiteResult run_suite(const std::string& suite, int count, std::uint64_t seed, const SearchOptions& opts = {});

}  // namespace groupfair
