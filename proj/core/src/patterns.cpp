#include "nullcount/patterns.h"

#include <algorithm>
#include <map>
#include <set>

#include "nullcount/errors.h"

namespace nullcount {

namespace {

struct AtomProfile {
  std::map<std::string, int> var_count;
  std::map<std::string, int> const_count;
};

AtomProfile profile(const Atom& a) {
  AtomProfile p;
  for (const QueryTerm& t : a.args) {
    if (t.variable) {
      p.var_count[t.name] += 1;
    } else {
      p.const_count[t.name] += 1;
    }
  }
  return p;
}

// Backtracking search for an injective atom map and injective variable
// renaming. Pattern atoms are matched in order; the renaming grows as atoms
// commit to host atoms.
struct PatternSearch {
  const std::vector<AtomProfile>& pat;
  const std::vector<AtomProfile>& host;
  std::vector<bool> host_used;
  std::map<std::string, std::string> rename;
  std::set<std::string> range;

  bool match_atoms(std::size_t i) {
    if (i == pat.size()) return true;
    for (std::size_t j = 0; j < host.size(); ++j) {
      if (host_used[j]) continue;
      if (!constants_fit(pat[i], host[j])) continue;
      host_used[j] = true;
      std::vector<std::pair<std::string, int>> todo(
          pat[i].var_count.begin(), pat[i].var_count.end());
      if (match_vars(i, j, todo, 0)) return true;
      host_used[j] = false;
    }
    return false;
  }

  static bool constants_fit(const AtomProfile& p, const AtomProfile& h) {
    for (const auto& [c, n] : p.const_count) {
      auto it = h.const_count.find(c);
      if (it == h.const_count.end() || it->second < n) return false;
    }
    return true;
  }

  bool match_vars(std::size_t i, std::size_t j,
                  const std::vector<std::pair<std::string, int>>& todo,
                  std::size_t k) {
    if (k == todo.size()) return match_atoms(i + 1);
    const auto& [x, need] = todo[k];
    auto bound = rename.find(x);
    if (bound != rename.end()) {
      auto it = host[j].var_count.find(bound->second);
      if (it == host[j].var_count.end() || it->second < need) return false;
      return match_vars(i, j, todo, k + 1);
    }
    for (const auto& [v, have] : host[j].var_count) {
      if (have < need || range.count(v)) continue;
      rename.emplace(x, v);
      range.insert(v);
      if (match_vars(i, j, todo, k + 1)) return true;
      rename.erase(x);
      range.erase(v);
    }
    return false;
  }
};

}  // namespace

bool contains_pattern(const ConjunctiveQuery& q, const ConjunctiveQuery& p) {
  if (p.atoms.empty() || q.atoms.empty()) {
    fail(errc::domain, "pattern containment needs nonempty queries");
  }
  if (p.atoms.size() > q.atoms.size()) return false;
  std::vector<AtomProfile> pat, host;
  for (const Atom& a : p.atoms) pat.push_back(profile(a));
  for (const Atom& a : q.atoms) host.push_back(profile(a));
  PatternSearch search{pat, host, std::vector<bool>(host.size(), false)};
  return search.match_atoms(0);
}

CanonicalPatternReport canonical_patterns(const ConjunctiveQuery& q) {
  CanonicalPatternReport r;
  r.Rx_only = q.all_atoms_unary();

  // Variable -> atoms it appears in.
  std::map<std::string, std::set<int>> var_atoms;
  for (int i = 0; i < static_cast<int>(q.atoms.size()); ++i) {
    AtomProfile p = profile(q.atoms[i]);
    int distinct_vars = 0;
    for (const auto& [x, n] : p.var_count) {
      if (n >= 2) r.Rxx = true;
      ++distinct_vars;
      var_atoms[x].insert(i);
    }
    if (distinct_vars >= 2) r.Rxy = true;
    int distinct_consts = 0;
    for (const auto& [c, n] : p.const_count) {
      if (n >= 2) r.Rcc = true;
      ++distinct_consts;
    }
    if (distinct_consts >= 2) r.Rcc_distinct = true;
    if (distinct_consts >= 1 && q.atoms[i].args.size() >= 2) {
      r.atom_with_constant_and_arity_ge2 = true;
    }
  }
  for (const auto& [x, atoms] : var_atoms) {
    if (atoms.size() >= 2) r.RxSx = true;
  }
  // Two atoms sharing two distinct variables.
  int n = static_cast<int>(q.atoms.size());
  for (int i = 0; i < n && !r.RxySxy; ++i) {
    for (int j = i + 1; j < n && !r.RxySxy; ++j) {
      int shared = 0;
      for (const auto& [x, atoms] : var_atoms) {
        if (atoms.count(i) && atoms.count(j)) ++shared;
      }
      if (shared >= 2) r.RxySxy = true;
    }
  }
  // A middle atom sharing distinct variables with two distinct neighbors.
  for (const auto& [x, ax] : var_atoms) {
    if (r.RxSxyTy) break;
    for (const auto& [y, ay] : var_atoms) {
      if (x == y) continue;
      // b shares x with a and y with c; a, b, c pairwise distinct.
      for (int b : ax) {
        if (!ay.count(b)) continue;
        bool has_a = std::any_of(ax.begin(), ax.end(),
                                 [&](int a) { return a != b; });
        bool has_c = std::any_of(ay.begin(), ay.end(),
                                 [&](int c) { return c != b; });
        if (!has_a || !has_c) continue;
        // Need a != c as well; with a != b and c != b that can only fail
        // when the unique choice coincides, i.e. both sets are {a, b}.
        std::set<int> others_a, others_c;
        for (int a : ax) {
          if (a != b) others_a.insert(a);
        }
        for (int c : ay) {
          if (c != b) others_c.insert(c);
        }
        if (others_a.size() == 1 && others_c.size() == 1 &&
            *others_a.begin() == *others_c.begin()) {
          continue;
        }
        r.RxSxyTy = true;
        break;
      }
      if (r.RxSxyTy) break;
    }
  }
  return r;
}

ConnectivityGraph connectivity_graph(const ConjunctiveQuery& q) {
  ConnectivityGraph g;
  g.atom_count = static_cast<int>(q.atoms.size());
  std::vector<std::set<std::string>> vars(g.atom_count);
  for (int i = 0; i < g.atom_count; ++i) {
    for (const QueryTerm& t : q.atoms[i].args) {
      if (t.variable) vars[i].insert(t.name);
    }
  }
  std::vector<int> parent(g.atom_count);
  for (int i = 0; i < g.atom_count; ++i) parent[i] = i;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < g.atom_count; ++i) {
    for (int j = i + 1; j < g.atom_count; ++j) {
      std::vector<std::string> shared;
      std::set_intersection(vars[i].begin(), vars[i].end(), vars[j].begin(),
                            vars[j].end(), std::back_inserter(shared));
      if (!shared.empty()) {
        g.edges.push_back({i, j, std::move(shared)});
        parent[find(i)] = find(j);
      }
    }
  }
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < g.atom_count; ++i) comps[find(i)].push_back(i);
  for (auto& [root, members] : comps) g.components.push_back(members);
  return g;
}

ConjunctiveQuery substitute_free(const ConjunctiveQuery& q,
                                 const std::vector<std::string>& constants) {
  if (constants.size() != q.free_vars.size()) {
    fail(errc::domain, "substitution arity mismatch");
  }
  std::map<std::string, std::string> sub;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    sub.emplace(q.free_vars[i], constants[i]);
  }
  ConjunctiveQuery out;
  for (const Atom& a : q.atoms) {
    Atom b;
    b.relation = a.relation;
    for (const QueryTerm& t : a.args) {
      auto it = t.variable ? sub.find(t.name) : sub.end();
      if (it != sub.end()) {
        b.args.push_back(QueryTerm{it->second, false});
      } else {
        b.args.push_back(t);
      }
    }
    out.atoms.push_back(std::move(b));
  }
  return out;
}

std::vector<std::vector<std::string>> free_var_classes(
    const ConjunctiveQuery& q) {
  std::size_t k = q.free_vars.size();
  std::vector<std::string> consts = q.constants();
  std::set<std::string> taken(consts.begin(), consts.end());

  // Fresh representatives that cannot collide with the query's constants.
  std::vector<std::string> fresh;
  std::string prefix = "f";
  for (bool ok = false; !ok; prefix += '_') {
    ok = true;
    fresh.clear();
    for (std::size_t i = 0; i < k && ok; ++i) {
      std::string name = prefix + std::to_string(i);
      if (taken.count(name)) ok = false;
      fresh.push_back(name);
    }
  }

  std::vector<std::vector<std::string>> classes;
  std::vector<std::string> current(k);
  // Assignments enumerate each variable's value: a query constant or one of
  // the fresh groups used so far plus one new group (restricted growth), so
  // each partition of the fresh block appears exactly once.
  auto assign = [&](auto&& self, std::size_t i, std::size_t groups) -> void {
    if (i == k) {
      classes.push_back(current);
      return;
    }
    for (const std::string& c : consts) {
      current[i] = c;
      self(self, i + 1, groups);
    }
    for (std::size_t g = 0; g <= groups && g < fresh.size(); ++g) {
      current[i] = fresh[g];
      self(self, i + 1, std::max(groups, g + 1));
    }
  };
  assign(assign, 0, 0);
  return classes;
}

}  // namespace nullcount
