#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nullcount/compsem.h"
#include "nullcount/errors.h"

namespace nullcount {

namespace {

// Can fact f (with nulls) become ground fact g under some valuation,
// ignoring consistency across facts?
bool compatible(const IncompleteDatabase& db, const Fact& f, const Fact& g) {
  if (f.relation != g.relation || f.args.size() != g.args.size()) return false;
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    const Term& t = f.args[i];
    if (t.null) {
      const Domain& d = db.dom(t.name);
      if (!std::binary_search(d.begin(), d.end(), g.args[i].name)) return false;
    } else if (t.name != g.args[i].name) {
      return false;
    }
  }
  return true;
}

}  // namespace

int max_bipartite_matching(int left_count, int right_count,
                           const std::vector<std::vector<int>>& adjacency) {
  std::vector<int> match_right(right_count, -1);
  std::vector<char> visited(right_count);
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adjacency[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || self(self, match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int u = 0; u < left_count; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, u)) ++size;
  }
  return size;
}

bool is_completion_codd(const IncompleteDatabase& db,
                        const GroundDatabase& s) {
  if (!db.codd()) fail(errc::setting, "database is not a Codd table");

  // In a Codd table facts valuate independently, so S is a completion
  // exactly when every db fact maps into S and every S fact is the image of
  // a distinct db fact: a fact-to-fact matching covering S.
  int left = static_cast<int>(db.facts().size());
  int right = static_cast<int>(s.facts().size());
  if (right > left) return false;
  std::vector<std::vector<int>> adjacency(left);
  for (int i = 0; i < left; ++i) {
    bool any = false;
    for (int j = 0; j < right; ++j) {
      if (compatible(db, db.facts()[i], s.facts()[j])) {
        adjacency[i].push_back(j);
        any = true;
      }
    }
    if (!any) return false;  // this fact cannot land anywhere in S
  }
  return max_bipartite_matching(left, right, adjacency) == right;
}

bool is_completion_naive(const IncompleteDatabase& db, const GroundDatabase& s,
                         const Caps& caps) {
  // Quick structural rejections.
  for (const Fact& g : s.facts()) {
    auto it = db.arities().find(g.relation);
    if (it == db.arities().end() ||
        it->second != static_cast<int>(g.args.size()))
      return false;
  }

  const std::vector<std::string>& nulls = db.nulls();
  std::map<std::string, int> null_index;
  for (std::size_t i = 0; i < nulls.size(); ++i)
    null_index[nulls[i]] = static_cast<int>(i);
  int n = static_cast<int>(nulls.size());

  // assignment[i] = chosen value, or "" while undecided.
  std::vector<std::string> assignment(n);
  std::vector<char> assigned(n, 0);
  std::uint64_t nodes = 0;

  // A db fact can still reach ground fact g when every decided position
  // agrees and every undecided null position has g's value in its domain.
  auto fact_open = [&](const Fact& f, const Fact& g) {
    if (f.relation != g.relation || f.args.size() != g.args.size())
      return false;
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      const Term& t = f.args[i];
      const std::string& want = g.args[i].name;
      if (!t.null) {
        if (t.name != want) return false;
        continue;
      }
      int idx = null_index.at(t.name);
      if (assigned[idx]) {
        if (assignment[idx] != want) return false;
      } else {
        const Domain& d = db.dom(t.name);
        if (!std::binary_search(d.begin(), d.end(), want)) return false;
      }
    }
    return true;
  };

  // Every db fact must still reach some S fact, and every S fact must still
  // be reachable from some db fact.
  auto consistent = [&]() {
    std::vector<char> covered(s.facts().size(), 0);
    for (const Fact& f : db.facts()) {
      bool reach = false;
      for (std::size_t j = 0; j < s.facts().size(); ++j) {
        if (fact_open(f, s.facts()[j])) {
          reach = true;
          covered[j] = 1;
        }
      }
      if (!reach) return false;
    }
    for (char c : covered) {
      if (!c) return false;
    }
    return true;
  };

  // Values for null i that keep every fact containing it reachable.
  auto candidates = [&](int i) {
    std::vector<std::string> result;
    for (const std::string& v : db.dom(nulls[i])) {
      assigned[i] = 1;
      assignment[i] = v;
      bool ok = true;
      for (const Fact& f : db.facts()) {
        bool touches = false;
        for (const Term& t : f.args) {
          if (t.null && t.name == nulls[i]) touches = true;
        }
        if (!touches) continue;
        bool reach = false;
        for (const Fact& g : s.facts()) {
          if (fact_open(f, g)) {
            reach = true;
            break;
          }
        }
        if (!reach) {
          ok = false;
          break;
        }
      }
      assigned[i] = 0;
      if (ok) result.push_back(v);
    }
    return result;
  };

  auto search = [&](auto&& self) -> bool {
    if (++nodes > caps.completion_search_nodes)
      fail(errc::resource, "completion membership search exceeded " +
                               std::to_string(caps.completion_search_nodes) +
                               " nodes");
    int pick = -1;
    std::vector<std::string> pick_values;
    for (int i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      std::vector<std::string> values = candidates(i);
      if (pick < 0 || values.size() < pick_values.size()) {
        pick = i;
        pick_values = std::move(values);
        if (pick_values.empty()) return false;
      }
    }
    if (pick < 0) {
      Valuation v;
      for (int i = 0; i < n; ++i) v[nulls[i]] = assignment[i];
      return apply_valuation(db, v) == s;
    }
    for (const std::string& v : pick_values) {
      assigned[pick] = 1;
      assignment[pick] = v;
      if (consistent() && self(self)) return true;
      assigned[pick] = 0;
    }
    return false;
  };
  return search(search);
}

bool is_completion(const IncompleteDatabase& db, const GroundDatabase& s,
                   const Caps& caps) {
  return db.codd() ? is_completion_codd(db, s) : is_completion_naive(db, s, caps);
}

}  // namespace nullcount
