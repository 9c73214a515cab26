#pragma once

#include <string>
#include <vector>

#include "nullcount/patterns.h"
#include "nullcount/query.h"

namespace nullcount {

// How nulls may repeat: Codd tables use each null once, naive tables allow
// repetition.
enum class TableKind { naive, codd };
// Whether all nulls share one domain.
enum class DomainKind { non_uniform, uniform };

struct Setting {
  TableKind table = TableKind::naive;
  DomainKind domain = DomainKind::non_uniform;

  friend bool operator==(const Setting&, const Setting&) = default;
};

enum class ProblemKind { valuations, completions };

struct Problem {
  ProblemKind kind = ProblemKind::valuations;
  // Count the valuations (completions) that do not satisfy the query.
  bool negated = false;

  friend bool operator==(const Problem&, const Problem&) = default;
};

enum class ExactStatus {
  tractable,         // polynomial-time exact algorithm, named below
  sharp_p_complete,  // #P-complete
  sharp_p_hard,      // #P-hard; membership in #P is not claimed
  unknown,           // complexity open
};

struct ExactVerdict {
  ExactStatus status = ExactStatus::unknown;
  // Identifier of the dispatching algorithm when tractable: one of
  // "product", "constants-dp", "codd-per-atom", "uniform-naive-ie",
  // "uniform-codd-star", "uniform-unary-comp".
  std::string algorithm;
  // Hard patterns found in the query, as query text, when hard.
  std::vector<std::string> witnesses;
  std::string explanation;
};

enum class ApproxStatus {
  fpras,                     // randomized (1 +/- eps) scheme exists
  no_fpras_unless_np_eq_rp,  // none exists unless NP = RP
  open,                      // existence is open
};

struct ApproxVerdict {
  ApproxStatus status = ApproxStatus::open;
  std::string explanation;
};

const char* exact_status_name(ExactStatus s);
const char* approx_status_name(ApproxStatus s);

// Decides the exact counting complexity of a Boolean self-join-free
// conjunctive query under the given setting and problem. errc::capability
// for queries outside that class (unions, free variables, self-joins).
ExactVerdict classify_exact(const ConjunctiveQuery& q, Setting setting,
                            Problem problem);

// Approximation verdict; defined for every union of conjunctive queries.
ApproxVerdict classify_approx(const UnionQuery& q, Setting setting,
                              Problem problem);

// For a query with free variables: classify every substitution class
// representative. Overall status: hard if any class is hard, tractable if
// all are tractable, otherwise unknown.
struct ParametricVerdict {
  std::vector<std::pair<std::vector<std::string>, ExactVerdict>> classes;
  ExactStatus overall = ExactStatus::unknown;
};

ParametricVerdict classify_parametric(const ConjunctiveQuery& q,
                                      Setting setting, Problem problem);

}  // namespace nullcount
