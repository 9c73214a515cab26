#pragma once

#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/classify.h"
#include "nullcount/model.h"
#include "nullcount/query.h"

namespace nullcount {

// Exact polynomial-time counters. Each expects a Boolean self-join-free
// conjunctive query that classify_exact marks tractable with the matching
// algorithm id under the setting named in the function; errc::capability
// or errc::setting otherwise. All return the number of satisfying
// valuations (or completions, for the last one).

// "product": naive tables, any domains, no constants in wide atoms, no
// repeated variables or shared variables. Constant atoms reduce to the
// constants DP.
BigCount count_val_disjoint(const IncompleteDatabase& db,
                            const ConjunctiveQuery& q,
                            const Caps& caps = default_caps());

// "constants-dp": valuations satisfying R_1(c_1) and ... and R_k(c_k) over
// a unary database, by dynamic programming over nulls with the set of
// already-satisfied targets as state. k bounded by caps.max_constant_atoms.
BigCount count_val_constants_dp(const IncompleteDatabase& db,
                                const ConjunctiveQuery& q,
                                const Caps& caps = default_caps());

// "codd-per-atom": Codd tables, any domains, constants allowed, no variable
// shared between atoms. Per-atom product formula.
BigCount count_val_codd(const IncompleteDatabase& db,
                        const ConjunctiveQuery& q);

// "uniform-naive-ie": uniform naive tables, constant-free query, shared
// variables allowed but no repeated variable inside an atom and no two
// shared variables touching one atom. Inclusion-exclusion over violated
// unary singletons with a block-merging nested sum.
BigCount count_val_uniform_naive(const IncompleteDatabase& db,
                                 const ConjunctiveQuery& q,
                                 const Caps& caps = default_caps());

// "uniform-codd-star": uniform Codd tables, constant-free query, repeated
// variables allowed, components sharing one variable, at most
// caps.star_max_atoms atoms per component. Dynamic program over the
// determined constants.
BigCount count_val_uniform_codd(const IncompleteDatabase& db,
                                const ConjunctiveQuery& q,
                                const Caps& caps = default_caps());

// "uniform-unary-comp": completions of a uniform database over unary
// relations satisfying a unary query, by summing over refined profiles of
// the completion's in-domain values. negated counts the completions that do
// not satisfy the query. Relations bounded by caps.max_comp_relations; the
// database must not mention relations outside the query.
BigCount count_comp_uniform_unary(const IncompleteDatabase& db,
                                  const ConjunctiveQuery& q,
                                  bool negated = false,
                                  const Caps& caps = default_caps());

}  // namespace nullcount
