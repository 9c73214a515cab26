#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/model.h"
#include "nullcount/query.h"

namespace nullcount {

// One way the query can hold: a disjunct, one database fact per atom, and a
// variable assignment consistent with those facts. The forced map pins the
// nulls that the match determines; every valuation extending it satisfies
// the query, and every satisfying valuation extends some witness.
struct Witness {
  int disjunct = 0;
  std::vector<int> fact_choice;  // index into the relation's sorted facts
  std::map<std::string, std::string> assignment;  // variable -> constant
  Valuation forced;                               // null -> constant
  BigCount cylinder;  // product of |dom| over unforced nulls
};

// All witnesses in canonical order: disjunct, then fact choices, then the
// assignment under sorted constants. errc::resource past
// caps.max_witnesses.
std::vector<Witness> enumerate_witnesses(const IncompleteDatabase& db,
                                         const UnionQuery& q,
                                         const Caps& caps = default_caps());

// |union of cylinders| by inclusion-exclusion over subsets; exact. At most
// caps.max_ie_witnesses witnesses (errc::capability).
BigCount exact_union_by_ie(const IncompleteDatabase& db,
                           const std::vector<Witness>& witnesses,
                           const Caps& caps = default_caps());

// Estimate as an exact rational: numerator / denominator approximates the
// satisfying-valuation count.
struct EstimateReport {
  BigCount numerator;
  std::uint64_t denominator = 1;
  double epsilon = 0;
  double delta = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t witness_count = 0;
  bool exact = false;  // true when the witness structure made sampling moot
};

// Union-of-cylinders estimator: samples a witness with probability
// proportional to its cylinder, extends uniformly, accepts when the sampled
// valuation's minimal witness is the chosen one. Within a factor (1 + eps)
// of the true count with probability at least (1 - delta). Deterministic
// for a fixed seed regardless of caps.jobs; delta below 1/4 runs a median
// of independent repetitions.
EstimateReport estimate_valuations(const IncompleteDatabase& db,
                                   const UnionQuery& q, double epsilon,
                                   double delta, std::uint64_t seed,
                                   const Caps& caps = default_caps());

}  // namespace nullcount
