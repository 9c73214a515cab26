#pragma once

#include <vector>

#include "nullcount/caps.h"
#include "nullcount/model.h"

namespace nullcount {

// Maximum matching in a bipartite graph given as left-side adjacency lists,
// by augmenting paths.
int max_bipartite_matching(int left_count, int right_count,
                           const std::vector<std::vector<int>>& adjacency);

// Is the ground database a completion of db? Codd tables only
// (errc::setting otherwise): polynomial, via a compatibility matching
// between facts of db and facts of s.
bool is_completion_codd(const IncompleteDatabase& db, const GroundDatabase& s);

// Naive tables: backtracking over null assignments, fewest-candidates
// first, with forward pruning. errc::resource past
// caps.completion_search_nodes.
bool is_completion_naive(const IncompleteDatabase& db, const GroundDatabase& s,
                         const Caps& caps = default_caps());

// Dispatches on db.codd().
bool is_completion(const IncompleteDatabase& db, const GroundDatabase& s,
                   const Caps& caps = default_caps());

}  // namespace nullcount
