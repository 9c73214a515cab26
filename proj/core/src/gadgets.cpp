#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nullcount/errors.h"
#include "nullcount/gadgets.h"

namespace nullcount {

namespace {

std::string pick_name(const std::string& prefix,
                      const std::set<std::string>& taken) {
  if (!taken.count(prefix)) return prefix;
  for (int i = 0;; ++i) {
    std::string candidate = prefix + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

// Reductions describe facts per node and per edge; the same fact can arise
// twice (parallel structure), and the database wants a set.
std::vector<Fact> to_vector(std::set<Fact> facts) {
  return {facts.begin(), facts.end()};
}

}  // namespace

GadgetOutput gadget_3col(const Graph& g, const Caps& caps) {
  std::map<std::string, Domain> doms;
  for (const std::string& u : g.nodes) doms["c_" + u] = {"1", "2", "3"};
  std::set<Fact> facts;
  for (auto [a, b] : g.edges) {
    Term ta = null("c_" + g.nodes[a]);
    Term tb = null("c_" + g.nodes[b]);
    facts.insert({"R", {ta, tb}});
    facts.insert({"R", {tb, ta}});
  }
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_per_null(std::move(doms))),
          parse_query("R(X, X)"),
          {ProblemKind::valuations, false},
          "#val(R(X,X)) = 3^|V| - #3col(G)",
          bpow(3, g.nodes.size()) - count_3colorings(g, caps)};
}

GadgetOutput gadget_is_val(const Graph& g, IsValVariant variant,
                           const Caps& caps) {
  std::map<std::string, Domain> doms;
  for (const std::string& u : g.nodes) doms["s_" + u] = {"0", "1"};
  std::set<Fact> facts;
  for (auto [a, b] : g.edges) {
    Term ta = null("s_" + g.nodes[a]);
    Term tb = null("s_" + g.nodes[b]);
    facts.insert({"S", {ta, tb}});
    facts.insert({"S", {tb, ta}});
  }
  UnionQuery q;
  std::string identity;
  if (variant == IsValVariant::rst) {
    facts.insert({"R", {constant("1")}});
    facts.insert({"T", {constant("1")}});
    q = parse_query("R(X), S(X, Y), T(Y)");
    identity = "#val(R(X),S(X,Y),T(Y)) = 2^|V| - #is(G)";
  } else {
    facts.insert({"R", {constant("1"), constant("1")}});
    q = parse_query("R(X, Y), S(X, Y)");
    identity = "#val(R(X,Y),S(X,Y)) = 2^|V| - #is(G)";
  }
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_per_null(std::move(doms))),
          std::move(q),
          {ProblemKind::valuations, false},
          std::move(identity),
          bpow(2, g.nodes.size()) - count_independent_sets(g, caps)};
}

GadgetOutput gadget_vc(const Graph& g, const Caps& caps) {
  std::set<std::string> names(g.nodes.begin(), g.nodes.end());
  std::string anchor = pick_name("a", names);
  std::map<std::string, Domain> doms;
  std::set<Fact> facts;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    std::string n = "e" + std::to_string(i);
    doms[n] = {g.nodes[g.edges[i].first], g.nodes[g.edges[i].second]};
    facts.insert({"R", {null(n)}});
  }
  for (const std::string& u : g.nodes) {
    std::string n = "n_" + u;
    doms[n] = {u, anchor};
    facts.insert({"R", {null(n)}});
  }
  facts.insert({"R", {constant(anchor)}});
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_per_null(std::move(doms))),
          parse_query("R(X)"),
          {ProblemKind::completions, false},
          "#comp(R(X)) = #vc(G)",
          count_vertex_covers(g, caps)};
}

GadgetOutput gadget_is_comp(const Graph& g, const Caps& caps) {
  std::set<Fact> facts;
  // Node names are prefixed so they cannot collide with the domain {0,1}.
  for (const std::string& u : g.nodes) {
    facts.insert({"R", {constant("v_" + u), null("n_" + u)}});
  }
  for (auto [a, b] : g.edges) {
    Term ta = null("n_" + g.nodes[a]);
    Term tb = null("n_" + g.nodes[b]);
    facts.insert({"R", {ta, tb}});
    facts.insert({"R", {tb, ta}});
  }
  facts.insert({"R", {constant("0"), constant("0")}});
  facts.insert({"R", {constant("0"), constant("1")}});
  facts.insert({"R", {constant("1"), constant("0")}});
  facts.insert({"R", {null("aux"), null("aux")}});
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_uniform({"0", "1"})),
          parse_query("R(X, X)"),
          {ProblemKind::completions, false},
          "#comp(R(X,X)) = 2^|V| + #is(G)",
          bpow(2, g.nodes.size()) + count_independent_sets(g, caps)};
}

GadgetOutput gadget_pf(const Graph& g, const Caps& caps) {
  if (!g.bipartite || g.side.size() != g.nodes.size()) {
    fail(errc::domain, "pseudoforest gadget needs a bipartition");
  }
  for (auto [a, b] : g.edges) {
    if (g.side[a] == g.side[b]) {
      fail(errc::domain, "edge " + g.nodes[a] + " " + g.nodes[b] +
                             " does not cross the bipartition");
    }
  }
  std::set<std::string> names(g.nodes.begin(), g.nodes.end());
  std::string fresh = pick_name("z", names);

  // The only pairs a completion controls: (u, v) with u on the left, v on
  // the right, {u,v} an edge. Everything else is a fixed fact.
  std::set<std::pair<int, int>> slots;
  for (auto [a, b] : g.edges) {
    int u = g.side[a] == 0 ? a : b;
    int v = g.side[a] == 0 ? b : a;
    slots.emplace(u, v);
  }
  std::set<Fact> facts;
  int n = static_cast<int>(g.nodes.size());
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (!slots.count({s, t})) {
        facts.insert({"R", {constant(g.nodes[s]), constant(g.nodes[t])}});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (g.side[i] == 0) {
      facts.insert({"R", {constant(g.nodes[i]), null("p_" + g.nodes[i])}});
    } else {
      facts.insert({"R", {null("p_" + g.nodes[i]), constant(g.nodes[i])}});
    }
  }
  facts.insert({"R", {constant(fresh), constant(fresh)}});
  Domain dom = g.nodes.empty() ? Domain{fresh}
                               : Domain(g.nodes.begin(), g.nodes.end());
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_uniform(std::move(dom))),
          parse_query("R(X, X)"),
          {ProblemKind::completions, false},
          "#comp(R(X,X)) = #pf(G)",
          count_pseudoforests(g, caps)};
}

GadgetOutput gadget_3col_comp(const Graph& g, const Caps& caps) {
  std::set<Fact> facts;
  for (auto [a, b] : g.edges) {
    Term ta = null("c_" + g.nodes[a]);
    Term tb = null("c_" + g.nodes[b]);
    facts.insert({"R", {ta, tb}});
    facts.insert({"R", {tb, ta}});
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i != j) {
        facts.insert({"R", {constant(std::to_string(i)),
                            constant(std::to_string(j))}});
      }
    }
  }
  // Three free pairs reach any subset of the diagonal on their own.
  for (int k = 1; k <= 3; ++k) {
    Term a = null("a" + std::to_string(k));
    Term b = null("b" + std::to_string(k));
    facts.insert({"R", {a, b}});
    facts.insert({"R", {b, a}});
  }
  std::string c = pick_name("c", {"1", "2", "3"});
  facts.insert({"R", {constant(c), constant(c)}});
  BigCount ref = count_3colorings(g, caps) > 0 ? 8 : 7;
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_uniform({"1", "2", "3"})),
          parse_query("R(" + c + ", " + c + ")"),
          {ProblemKind::completions, false},
          "#comp(R(c,c)) = 8 if G is 3-colorable, else 7",
          std::move(ref)};
}

GadgetOutput gadget_k3sat(const Cnf3& f, int k, const Caps& caps) {
  if (k < 1 || k > f.num_vars) {
    fail(errc::domain, "k must be between 1 and the number of variables");
  }
  auto cname = [](int a1, int a2, int a3) {
    std::string rel = "C";
    rel += static_cast<char>('0' + a1);
    rel += static_cast<char>('0' + a2);
    rel += static_cast<char>('0' + a3);
    return rel;
  };
  std::set<Fact> facts;
  // Each sign relation holds every 0/1 triple except the one a clause with
  // those signs produces exactly when falsified.
  for (int a1 : {0, 1}) {
    for (int a2 : {0, 1}) {
      for (int a3 : {0, 1}) {
        std::string rel = cname(a1, a2, a3);
        for (int b1 : {0, 1}) {
          for (int b2 : {0, 1}) {
            for (int b3 : {0, 1}) {
              if (b1 == 1 - a1 && b2 == 1 - a2 && b3 == 1 - a3) continue;
              facts.insert({rel, {constant(std::to_string(b1)),
                                  constant(std::to_string(b2)),
                                  constant(std::to_string(b3))}});
            }
          }
        }
      }
    }
  }
  for (const auto& clause : f.clauses) {
    int sign[3];
    int var[3];
    for (int i = 0; i < 3; ++i) {
      sign[i] = clause[i] > 0 ? 1 : 0;
      var[i] = std::abs(clause[i]);
    }
    facts.insert({cname(sign[0], sign[1], sign[2]),
                  {null("x" + std::to_string(var[0])),
                   null("x" + std::to_string(var[1])),
                   null("x" + std::to_string(var[2]))}});
  }
  for (int i = 1; i <= k; ++i) {
    facts.insert(
        {"S", {constant(std::to_string(i)), null("x" + std::to_string(i))}});
  }
  std::string qtext = "S(X0, Y0)";
  for (int a1 : {0, 1}) {
    for (int a2 : {0, 1}) {
      for (int a3 : {0, 1}) {
        qtext += ", " + cname(a1, a2, a3) + "(Z, W, T)";
      }
    }
  }
  return {IncompleteDatabase(to_vector(std::move(facts)),
                             DomainAssignment::make_uniform({"0", "1"})),
          parse_query(qtext),
          {ProblemKind::completions, true},
          "#comp(not q) = #prefixes of x_1..x_k extendable to a model",
          count_3sat_prefixes(f, k, caps)};
}

bool verify_identity(const GadgetOutput& g, const Caps& caps, BigCount* lhs) {
  BigCount left =
      g.problem.kind == ProblemKind::valuations
          ? brute_count_valuations(g.db, g.query, g.problem.negated, caps)
          : brute_count_completions(g.db, g.query, g.problem.negated, caps);
  if (lhs) *lhs = left;
  return left == g.reference;
}

}  // namespace nullcount
