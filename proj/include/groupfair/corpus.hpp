#pragma once

// Built-in counterexample corpus: small instances on which a fairness notion
// provably cannot be met (or, for a few entries, can), together with the
// search constraints and the outcome the exhaustive oracle must report.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "groupfair/model.hpp"
#include "groupfair/oracle.hpp"

namespace groupfair {

struct Expectation {
  enum class Kind {
    /// No satisfying allocation; exactly `examined` candidates scanned.
    exhausted,
    /// Some satisfying allocation exists.
    found,
    /// At least one satisfying allocation exists and every one passes `property`.
    all_satisfy,
  };
  Kind kind = Kind::exhausted;
  std::uint64_t examined = 0;
  std::string property_name;
  std::function<bool(const Allocation&)> property;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  Instance instance;
  SearchConstraints constraints;
  Expectation expected;
};

struct CorpusOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Instance builders, also used by tests and the CLI.
Instance ef1_six_one_instance();
Instance ef1_four_two_instance();
/// Two groups of C(2c+1, c+1) agents over 2c+1 goods; one agent per (c+1)-subset in each group.
Instance efc_equal_instance(int c);
Instance efx0_two_one_instance();
Instance balanced_five_one_instance();
Instance efx_additive_two_one_instance();
/// Six agents, three goods, variable groups of sizes (3, 3).
Instance efx_balanced_agents_instance();
/// Two individual agents with identical additive values (m, 1, ..., 1).
Instance efx_balanced_individual_instance(int m);

std::vector<CorpusEntry> corpus();
/// Throws DataError for unknown names.
CorpusEntry corpus_entry(const std::string& name);

CorpusOutcome run_corpus_entry(const CorpusEntry& entry, const SearchOptions& opts = {});

}  // namespace groupfair
