#pragma once

// Shared helpers for the exact counting algorithms.

#include <string>

#include "nullcount/big.h"
#include "nullcount/classify.h"
#include "nullcount/errors.h"
#include "nullcount/model.h"
#include "nullcount/oracle.h"
#include "nullcount/query.h"

namespace nullcount::detail {

// Checks that classify_exact routes (q, setting, problem) to the algorithm
// calling this, so each counter refuses queries outside its class.
inline void require_algorithm(const ConjunctiveQuery& q, Setting setting,
                              Problem problem, const std::string& expect_a,
                              const std::string& expect_b = "") {
  ExactVerdict v = classify_exact(q, setting, problem);
  if (v.status == ExactStatus::tractable &&
      (v.algorithm == expect_a || (!expect_b.empty() && v.algorithm == expect_b))) {
    return;
  }
  std::string got = v.status == ExactStatus::tractable
                        ? "algorithm " + v.algorithm
                        : std::string(exact_status_name(v.status));
  fail(errc::capability, "query is outside this algorithm's class (" + got +
                             "): " + v.explanation);
}

// Valuations of the nulls in the atom's relation under which some fact
// matches the atom. Codd tables only; defined in exact_codd.cpp and shared
// with the uniform star counter for single-atom components.
BigCount codd_atom_count(const IncompleteDatabase& db, const Atom& atom);

// A database with no nulls has exactly one valuation and one completion.
inline bool ground_shortcut(const IncompleteDatabase& db,
                            const ConjunctiveQuery& q, BigCount* out) {
  if (!db.nulls().empty()) return false;
  GroundDatabase g = apply_valuation(db, {});
  *out = eval(q, g) ? 1 : 0;
  return true;
}

// An atom over a relation the database lacks, or uses with another arity,
// matches nothing under any valuation.
inline bool atoms_unmatchable(const IncompleteDatabase& db,
                              const ConjunctiveQuery& q) {
  for (const Atom& a : q.atoms) {
    auto it = db.arities().find(a.relation);
    if (it == db.arities().end() ||
        it->second != static_cast<int>(a.args.size())) {
      return true;
    }
  }
  return false;
}

}  // namespace nullcount::detail
