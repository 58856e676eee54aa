#include "groupfair/reduction.hpp"

#include <sstream>

namespace groupfair {

void validate(const MonotoneFormula& f) {
  if (f.num_vars < 0 || f.num_vars > kMaxGoods) throw DataError("number of variables out of range");
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    const auto& v = f.clauses[i].vars;
    for (int x : v) {
      if (x < 0 || x >= f.num_vars) throw DataError("clause " + std::to_string(i + 1) + " uses an unknown variable");
    }
    if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) {
      throw DataError("clause " + std::to_string(i + 1) + " repeats a variable");
    }
  }
}

Instance formula_to_instance(const MonotoneFormula& f) {
  validate(f);
  Instance inst;
  inst.num_goods = f.num_vars;
  FixedGroups groups{{{}, {}}};
  // Positive clauses first so group 0 holds the lower agent ids.
  for (bool positive : {true, false}) {
    for (const auto& c : f.clauses) {
      if (c.positive != positive) continue;
      std::vector<Utility> vals(f.num_vars, 0);
      for (int x : c.vars) vals[x] = 1;
      groups.members[positive ? 0 : 1].push_back(inst.num_agents());
      inst.agents.push_back(Valuation::binary(std::move(vals)));
    }
  }
  inst.groups = std::move(groups);
  return inst;
}

Allocation assignment_to_allocation(const MonotoneFormula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.num_vars) throw DataError("assignment has the wrong length");
  Allocation alloc;
  alloc.bundles.assign(2, 0);
  for (int x = 0; x < f.num_vars; ++x) alloc.bundles[assignment[x] ? 0 : 1] |= good_bit(x);
  return alloc;
}

std::vector<bool> allocation_to_assignment(const MonotoneFormula& f, const Allocation& alloc) {
  if (alloc.num_groups() != 2 || !validate(alloc, f.num_vars).empty()) {
    throw DataError("allocation does not split the formula's goods between two groups");
  }
  std::vector<bool> out(f.num_vars);
  for (int x = 0; x < f.num_vars; ++x) out[x] = contains(alloc.bundles[0], x);
  return out;
}

bool satisfies(const MonotoneFormula& f, const std::vector<bool>& assignment) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int x : c.vars) sat = sat || (assignment[x] == c.positive);
    if (!sat) return false;
  }
  return true;
}

bool brute_force_satisfiable(const MonotoneFormula& f) {
  validate(f);
  if (f.num_vars > 24) throw TooLargeError("brute-force satisfiability supports at most 24 variables", f.num_vars);
  std::vector<bool> a(f.num_vars);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.num_vars); ++bits) {
    for (int x = 0; x < f.num_vars; ++x) a[x] = (bits >> x) & 1u;
    if (satisfies(f, a)) return true;
  }
  return false;
}

MonotoneFormula parse_monotone_dimacs(std::istream& in) {
  MonotoneFormula f;
  bool header = false;
  int declared = 0;
  std::vector<int> lits;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.num_vars >> declared) || fmt != "cnf") {
        throw DataError("line " + std::to_string(lineno) + ": malformed problem line");
      }
      header = true;
      continue;
    }
    if (!header) throw DataError("line " + std::to_string(lineno) + ": clause before problem line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit != 0) {
        lits.push_back(static_cast<int>(lit));
        continue;
      }
      const std::string where = "clause " + std::to_string(f.clauses.size() + 1);
      if (lits.size() != 3) throw DataError(where + ": monotone clauses have exactly three literals");
      MonotoneClause c;
      c.positive = lits[0] > 0;
      for (int i = 0; i < 3; ++i) {
        if ((lits[i] > 0) != c.positive) throw DataError(where + ": mixes positive and negative literals");
        c.vars[i] = std::abs(lits[i]) - 1;
      }
      f.clauses.push_back(c);
      lits.clear();
    }
    if (!ls.eof()) throw DataError("line " + std::to_string(lineno) + ": unexpected token");
  }
  if (!header) throw DataError("missing problem line");
  if (!lits.empty()) throw DataError("last clause is not terminated by 0");
  if (static_cast<int>(f.clauses.size()) != declared) {
    throw DataError("problem line declares " + std::to_string(declared) + " clauses, found " +
                    std::to_string(f.clauses.size()));
  }
  validate(f);
  return f;
}

std::string to_dimacs(const MonotoneFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int x : c.vars) os << (c.positive ? x + 1 : -(x + 1)) << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace groupfair
