#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/model.h"
#include "nullcount/query.h"

namespace nullcount {

// Undirected graph with named nodes, optionally carrying a bipartition.
// Text format, one item per line:
//   nodes: a b c
//   left: a b        (optional; the rest form the right side)
//   edge a b
struct Graph {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> edges;  // index pairs, a < b
  bool bipartite = false;
  std::vector<int> side;  // 0 = left, 1 = right; set when bipartite

  int node_index(const std::string& name) const;
  static Graph parse(const std::string& text);
  static Graph load(const std::string& path);
};

// 3-CNF formula. Text format: 'vars: n' then one clause per line,
// 'c3 1 -2 3' (1-based variable indices, sign = polarity).
struct Cnf3 {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based literals

  static Cnf3 parse(const std::string& text);
  static Cnf3 load(const std::string& path);
};

// Query evaluation on a ground database: homomorphism search over atoms,
// most-constrained atom first.
bool eval(const ConjunctiveQuery& q, const GroundDatabase& db);
bool eval(const UnionQuery& q, const GroundDatabase& db);

// Reference counters by exhaustive enumeration over the valuation space.
// Precondition: total_valuations(db) below caps.brute_valuations
// (errc::resource otherwise). negated counts non-satisfying valuations
// (distinct non-satisfying completions). Enumeration parallelizes across
// caps.jobs without changing results.
BigCount brute_count_valuations(const IncompleteDatabase& db,
                                const UnionQuery& q, bool negated = false,
                                const Caps& caps = default_caps());
BigCount brute_count_completions(const IncompleteDatabase& db,
                                 const UnionQuery& q, bool negated = false,
                                 const Caps& caps = default_caps());

// Exponential-time counters for the hard problems the reductions target.
// All enforce caps.oracle_max_nodes / caps.oracle_max_vars.
BigCount count_3colorings(const Graph& g, const Caps& caps = default_caps());
BigCount count_independent_sets(const Graph& g,
                                const Caps& caps = default_caps());
BigCount count_vertex_covers(const Graph& g,
                             const Caps& caps = default_caps());
// Spanning pseudoforests: edge subsets whose every connected component has
// at most as many edges as vertices. Requires a bipartition.
BigCount count_pseudoforests(const Graph& g,
                             const Caps& caps = default_caps());
// Assignments of x_1..x_k extendable to a model of the formula.
BigCount count_3sat_prefixes(const Cnf3& f, int k,
                             const Caps& caps = default_caps());

}  // namespace nullcount
