#pragma once

// Monotone 3-SAT to two-group binary EF1: one good per variable, one
// first-group agent per positive clause and one second-group agent per
// negative clause, each desiring exactly its clause's three goods. True
// variables go to the first group.

#include <array>
#include <istream>
#include <string>
#include <vector>

#include "groupfair/model.hpp"

namespace groupfair {

struct MonotoneClause {
  bool positive = true;
  /// Distinct variable indices, 0-based.
  std::array<int, 3> vars{};
  friend bool operator==(const MonotoneClause&, const MonotoneClause&) = default;
};

struct MonotoneFormula {
  int num_vars = 0;
  std::vector<MonotoneClause> clauses;
  friend bool operator==(const MonotoneFormula&, const MonotoneFormula&) = default;
};

/// Throws DataError on repeated or out-of-range variables.
void validate(const MonotoneFormula& f);

Instance formula_to_instance(const MonotoneFormula& f);

Allocation assignment_to_allocation(const MonotoneFormula& f, const std::vector<bool>& assignment);
std::vector<bool> allocation_to_assignment(const MonotoneFormula& f, const Allocation& alloc);

bool satisfies(const MonotoneFormula& f, const std::vector<bool>& assignment);
/// Plain enumeration over all 2^v assignments (v <= 24).
bool brute_force_satisfiable(const MonotoneFormula& f);

/// DIMACS CNF restricted to clauses of three distinct literals of one sign.
MonotoneFormula parse_monotone_dimacs(std::istream& in);
std::string to_dimacs(const MonotoneFormula& f);

}  // namespace groupfair
