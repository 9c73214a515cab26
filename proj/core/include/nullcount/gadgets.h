#pragma once

#include <string>

#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/classify.h"
#include "nullcount/model.h"
#include "nullcount/oracle.h"
#include "nullcount/query.h"

namespace nullcount {

// A hardness reduction made concrete: an incomplete database and query
// whose count equals a reference quantity of the source instance. The
// reference is computed at construction by the exponential counters, so
// verify_identity can replay the identity with the brute-force counters.
struct GadgetOutput {
  IncompleteDatabase db;
  UnionQuery query;
  Problem problem;
  std::string identity;  // human-readable statement of the equality
  BigCount reference;
};

// Valuations of a uniform naive table vs. proper 3-colorings:
//   #val(R(X,X)) = 3^|V| - #3col(G).
GadgetOutput gadget_3col(const Graph& g, const Caps& caps = default_caps());

// Valuations vs. independent sets, two query shapes:
//   rst:     #val(R(X),S(X,Y),T(Y)) = 2^|V| - #is(G)
//   rxy_sxy: #val(R(X,Y),S(X,Y))    = 2^|V| - #is(G)
enum class IsValVariant { rst, rxy_sxy };
GadgetOutput gadget_is_val(const Graph& g, IsValVariant variant,
                           const Caps& caps = default_caps());

// Completions of a non-uniform Codd table vs. vertex covers:
//   #comp(R(X)) = #vc(G).
GadgetOutput gadget_vc(const Graph& g, const Caps& caps = default_caps());

// Completions of a uniform naive table vs. independent sets:
//   #comp(R(X,X)) = 2^|V| + #is(G).
GadgetOutput gadget_is_comp(const Graph& g, const Caps& caps = default_caps());

// Completions of a uniform Codd table vs. spanning pseudoforests of a
// bipartite graph:
//   #comp(R(X,X)) = #pf(G).
GadgetOutput gadget_pf(const Graph& g, const Caps& caps = default_caps());

// Completion count separating 3-colorable graphs:
//   #comp = 8 when G is 3-colorable, 7 otherwise.
GadgetOutput gadget_3col_comp(const Graph& g,
                              const Caps& caps = default_caps());

// Non-satisfying completions vs. extendable prefixes of a 3-CNF:
//   #comp(not q) = #prefixes of x_1..x_k extendable to a model.
GadgetOutput gadget_k3sat(const Cnf3& f, int k,
                          const Caps& caps = default_caps());

// Recomputes the left side with the brute-force counters and compares. The
// left side lands in *lhs when given.
bool verify_identity(const GadgetOutput& g, const Caps& caps = default_caps(),
                     BigCount* lhs = nullptr);

}  // namespace nullcount
