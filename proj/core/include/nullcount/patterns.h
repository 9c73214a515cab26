#pragma once

#include <string>
#include <vector>

#include "nullcount/query.h"

namespace nullcount {

// Pattern order on self-join-free conjunctive queries. p is contained in q
// when p can be produced from q by deleting atoms, deleting variable or
// constant occurrences, renaming variables injectively, renaming relations
// injectively, and reordering. Equivalently: there is an injective map of
// p's atoms into q's atoms and an injective variable renaming rho such that
// within each mapped atom pair, every variable x of the pattern atom occurs
// at most as often as rho(x) occurs in the image atom, and every constant
// occurs at most as often as itself. Relation names are immaterial;
// constants are rigid.
bool contains_pattern(const ConjunctiveQuery& q, const ConjunctiveQuery& p);

// The handful of patterns the dichotomies pivot on, precomputed. Each flag
// is equivalent to contains_pattern against the named query.
struct CanonicalPatternReport {
  bool Rxx = false;       // R(x,x): an atom repeats a variable
  bool RxSx = false;      // R(x),S(x): a variable occurs in two atoms
  bool RxSxyTy = false;   // R(x),S(x,y),T(y): a path of two shared variables
  bool RxySxy = false;    // R(x,y),S(x,y): two atoms share two variables
  bool Rxy = false;       // R(x,y): an atom holds two distinct variables
  bool Rx_only = false;   // every atom is unary
  bool Rcc = false;       // R(c,c): an atom repeats a constant
  bool Rcc_distinct = false;  // R(c,d): an atom holds two distinct constants
  bool atom_with_constant_and_arity_ge2 = false;

  friend bool operator==(const CanonicalPatternReport&,
                         const CanonicalPatternReport&) = default;
};

CanonicalPatternReport canonical_patterns(const ConjunctiveQuery& q);

// Variable-sharing structure: vertices are atom indices, with an edge for
// every pair of atoms sharing at least one variable, labeled by the shared
// variables. Components list atom indices.
struct ConnectivityGraph {
  struct Edge {
    int a = 0;
    int b = 0;
    std::vector<std::string> shared;
  };
  int atom_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> components;
};

ConnectivityGraph connectivity_graph(const ConjunctiveQuery& q);

// Substitutes constants for the free variables, in head order, producing a
// Boolean query. errc::domain when the counts differ.
ConjunctiveQuery substitute_free(const ConjunctiveQuery& q,
                                 const std::vector<std::string>& constants);

// Representatives of the substitution classes of a non-Boolean query: every
// way of assigning each free variable one of the query's constants or a
// fresh constant, where assignments using fresh constants are identified up
// to the partition they induce on the free variables. Fresh names are
// generated to avoid the query's constants.
std::vector<std::vector<std::string>> free_var_classes(
    const ConjunctiveQuery& q);

}  // namespace nullcount
