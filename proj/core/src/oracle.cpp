#include "nullcount/oracle.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "nullcount/errors.h"

namespace nullcount {

namespace {

// ---------------------------------------------------------------------------
// Indexed form of a database plus query: constants, relations, and ground
// facts become small integers so the enumeration loop touches no strings.

struct Interner {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> names;

  int intern(const std::string& name) {
    auto [it, fresh] = ids.emplace(name, static_cast<int>(names.size()));
    if (fresh) names.push_back(name);
    return it->second;
  }
  int find(const std::string& name) const {
    auto it = ids.find(name);
    return it == ids.end() ? -1 : it->second;
  }
};

struct GroundKey {
  int relation;
  std::vector<int> args;

  bool operator==(const GroundKey& o) const {
    return relation == o.relation && args == o.args;
  }
};

struct GroundKeyHash {
  std::size_t operator()(const GroundKey& k) const {
    std::uint64_t h = 1469598103934665603ull ^ k.relation;
    for (int a : k.args) {
      h ^= static_cast<std::uint64_t>(a) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// One argument of a compiled query atom.
struct ArgSpec {
  bool variable;
  int index;  // variable slot or constant id (-1: constant unseen anywhere)
};

struct CompiledAtom {
  int relation;  // -1 when the relation never occurs in the database
  std::vector<ArgSpec> args;
};

struct CompiledCq {
  std::vector<CompiledAtom> atoms;
  int var_count = 0;
};

struct Engine {
  Interner consts;
  Interner relations;

  // Nulls in database order (sorted names).
  std::vector<std::vector<int>> domains;   // value ids per null
  std::vector<std::size_t> dom_size;

  // Interned ground facts; id is the index.
  std::vector<GroundKey> fact_pool;
  std::unordered_map<GroundKey, int, GroundKeyHash> fact_ids;
  std::vector<bool> is_fixed;              // part of every completion
  std::vector<std::vector<int>> fixed_by_rel;

  // A fact with nulls: image id table indexed by the mixed-radix code of
  // its own nulls' digits.
  struct VarFact {
    std::vector<int> null_idx;     // which database nulls feed this fact
    std::vector<std::size_t> stride;
    std::vector<int> image;        // -1: image equals a fixed fact
  };
  std::vector<VarFact> var_facts;

  std::vector<CompiledCq> query;

  int intern_fact(GroundKey key) {
    auto it = fact_ids.find(key);
    if (it != fact_ids.end()) return it->second;
    int id = static_cast<int>(fact_pool.size());
    fact_pool.push_back(key);
    fact_ids.emplace(std::move(key), id);
    is_fixed.push_back(false);
    return id;
  }
};

Engine build_engine(const IncompleteDatabase& db, const UnionQuery& q) {
  Engine e;
  std::unordered_map<std::string, int> null_index;
  for (std::size_t i = 0; i < db.nulls().size(); ++i) {
    null_index.emplace(db.nulls()[i], static_cast<int>(i));
    const Domain& d = db.dom(db.nulls()[i]);
    std::vector<int> vals;
    vals.reserve(d.size());
    for (const std::string& v : d) vals.push_back(e.consts.intern(v));
    e.dom_size.push_back(vals.size());
    e.domains.push_back(std::move(vals));
  }

  for (const Fact& f : db.facts()) {
    int rid = e.relations.intern(f.relation);
    if (f.ground()) {
      GroundKey key{rid, {}};
      key.args.reserve(f.args.size());
      for (const Term& t : f.args) key.args.push_back(e.consts.intern(t.name));
      int id = e.intern_fact(std::move(key));
      e.is_fixed[id] = true;
    } else {
      Engine::VarFact vf;
      std::vector<std::size_t> arg_null;  // per-arg local null slot or npos
      std::vector<int> base(f.args.size(), -1);
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (f.args[i].null) {
          int nidx = null_index.at(f.args[i].name);
          auto pos = std::find(vf.null_idx.begin(), vf.null_idx.end(), nidx);
          if (pos == vf.null_idx.end()) {
            vf.null_idx.push_back(nidx);
            arg_null.push_back(vf.null_idx.size() - 1);
          } else {
            arg_null.push_back(pos - vf.null_idx.begin());
          }
        } else {
          base[i] = e.consts.intern(f.args[i].name);
          arg_null.push_back(std::string::npos);
        }
      }
      std::size_t combos = 1;
      vf.stride.assign(vf.null_idx.size(), 0);
      for (std::size_t j = vf.null_idx.size(); j-- > 0;) {
        vf.stride[j] = combos;
        combos *= e.dom_size[vf.null_idx[j]];
      }
      vf.image.resize(combos);
      std::vector<std::size_t> digit(vf.null_idx.size(), 0);
      for (std::size_t code = 0; code < combos; ++code) {
        GroundKey key{rid, base};
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          if (arg_null[i] != std::string::npos) {
            key.args[i] = e.domains[vf.null_idx[arg_null[i]]]
                                   [digit[arg_null[i]]];
          }
        }
        vf.image[code] = e.intern_fact(std::move(key));
        for (std::size_t j = digit.size(); j-- > 0;) {
          if (++digit[j] < e.dom_size[vf.null_idx[j]]) break;
          digit[j] = 0;
        }
      }
      e.var_facts.push_back(std::move(vf));
    }
  }
  // Variable facts whose image coincides with a fixed fact are absorbed.
  for (auto& vf : e.var_facts) {
    for (int& id : vf.image) {
      if (id >= 0 && e.is_fixed[id]) id = -1;
    }
  }
  e.fixed_by_rel.resize(e.relations.names.size());
  for (int id = 0; id < static_cast<int>(e.fact_pool.size()); ++id) {
    if (e.is_fixed[id]) e.fixed_by_rel[e.fact_pool[id].relation].push_back(id);
  }

  for (const ConjunctiveQuery& cq : q.disjuncts) {
    CompiledCq cc;
    std::unordered_map<std::string, int> var_slot;
    for (const Atom& a : cq.atoms) {
      CompiledAtom ca;
      ca.relation = e.relations.find(a.relation);
      for (const QueryTerm& t : a.args) {
        if (t.variable) {
          auto [it, fresh] =
              var_slot.emplace(t.name, static_cast<int>(var_slot.size()));
          ca.args.push_back(ArgSpec{true, it->second});
        } else {
          ca.args.push_back(ArgSpec{false, e.consts.find(t.name)});
        }
      }
      cc.atoms.push_back(std::move(ca));
    }
    cc.var_count = static_cast<int>(var_slot.size());
    e.query.push_back(std::move(cc));
  }
  return e;
}

// Ground facts of one completion, bucketed by relation. The fixed part is
// shared; the variable part is appended and cleared per valuation.
struct BucketView {
  const Engine& e;
  std::vector<std::vector<int>> extra;  // per relation, variable fact ids

  explicit BucketView(const Engine& eng)
      : e(eng), extra(eng.relations.names.size()) {}

  void clear() {
    for (auto& v : extra) v.clear();
  }
  void add(int fact_id) { extra[e.fact_pool[fact_id].relation].push_back(fact_id); }
};

bool unify(const Engine& e, const CompiledAtom& atom, int fact_id,
           std::vector<int>& binding) {
  const GroundKey& f = e.fact_pool[fact_id];
  if (static_cast<int>(f.args.size()) != static_cast<int>(atom.args.size())) {
    return false;
  }
  // Two-phase so a failed row leaves bindings untouched via undo list.
  static thread_local std::vector<int> touched;
  touched.clear();
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const ArgSpec& s = atom.args[i];
    if (!s.variable) {
      if (s.index != f.args[i]) {
        for (int v : touched) binding[v] = -1;
        return false;
      }
      continue;
    }
    if (binding[s.index] == -1) {
      binding[s.index] = f.args[i];
      touched.push_back(s.index);
    } else if (binding[s.index] != f.args[i]) {
      for (int v : touched) binding[v] = -1;
      return false;
    }
  }
  return true;
}

bool eval_cq(const Engine& e, const BucketView& view, const CompiledCq& cq,
             std::vector<int>& order, std::size_t k,
             std::vector<int>& binding) {
  if (k == order.size()) return true;
  const CompiledAtom& atom = cq.atoms[order[k]];
  if (atom.relation < 0) return false;
  std::vector<int> undo = binding;
  for (int fid : e.fixed_by_rel[atom.relation]) {
    if (unify(e, atom, fid, binding)) {
      if (eval_cq(e, view, cq, order, k + 1, binding)) return true;
      binding = undo;
    }
  }
  for (int fid : view.extra[atom.relation]) {
    if (unify(e, atom, fid, binding)) {
      if (eval_cq(e, view, cq, order, k + 1, binding)) return true;
      binding = undo;
    }
  }
  return false;
}

bool eval_view(const Engine& e, const BucketView& view) {
  for (const CompiledCq& cq : e.query) {
    // Most-constrained atom first.
    std::vector<int> order(cq.atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto size_of = [&](int idx) -> std::size_t {
      int rel = cq.atoms[idx].relation;
      if (rel < 0) return 0;
      return e.fixed_by_rel[rel].size() + view.extra[rel].size();
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return size_of(a) < size_of(b); });
    std::vector<int> binding(cq.var_count, -1);
    if (eval_cq(e, view, cq, order, 0, binding)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Valuation enumeration in index order, chunked for worker threads.

struct Odometer {
  std::vector<std::size_t> digit;
  const std::vector<std::size_t>& sizes;

  Odometer(const std::vector<std::size_t>& s, std::uint64_t start)
      : digit(s.size(), 0), sizes(s) {
    for (std::size_t j = s.size(); j-- > 0;) {
      digit[j] = start % s[j];
      start /= s[j];
    }
  }
  void step() {
    for (std::size_t j = digit.size(); j-- > 0;) {
      if (++digit[j] < sizes[j]) return;
      digit[j] = 0;
    }
  }
};

std::uint64_t checked_total(const IncompleteDatabase& db, const Caps& caps) {
  BigCount total = total_valuations(db);
  if (total >= BigCount(static_cast<unsigned long>(1)) * caps.brute_valuations) {
    fail(errc::resource,
         "valuation space " + decimal(total) +
             " reaches the brute-force cap " +
             std::to_string(caps.brute_valuations));
  }
  return to_u64(total);
}

int effective_jobs(const Caps& caps, std::uint64_t work) {
  int jobs = caps.jobs > 0 ? caps.jobs : 1;
  if (work < 4096) return 1;
  std::uint64_t max_by_work = work / 2048;
  if (static_cast<std::uint64_t>(jobs) > max_by_work) {
    jobs = static_cast<int>(max_by_work);
  }
  return std::max(jobs, 1);
}

struct CompletionKeyHash {
  std::size_t operator()(const std::vector<int>& key) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int a : key) {
      h ^= static_cast<std::uint64_t>(a) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using CompletionMap =
    std::unordered_map<std::vector<int>, bool, CompletionKeyHash>;

// Walks valuations [begin, end); hands each completion's variable-part key
// to the sink when keyed is true, else evaluates directly.
template <typename PerValuation>
void walk(const Engine& e, std::uint64_t begin, std::uint64_t end,
          PerValuation&& per) {
  Odometer od(e.dom_size, begin);
  std::size_t nf = e.var_facts.size();
  std::vector<int> key;
  key.reserve(nf);
  for (std::uint64_t v = begin; v < end; ++v) {
    key.clear();
    for (const auto& vf : e.var_facts) {
      std::size_t code = 0;
      for (std::size_t j = 0; j < vf.null_idx.size(); ++j) {
        code += od.digit[vf.null_idx[j]] * vf.stride[j];
      }
      int id = vf.image[code];
      if (id >= 0) key.push_back(id);
    }
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    per(key);
    od.step();
  }
}

bool eval_key(const Engine& e, BucketView& view, const std::vector<int>& key) {
  view.clear();
  for (int id : key) view.add(id);
  return eval_view(e, view);
}

}  // namespace

// ---------------------------------------------------------------------------

bool eval(const ConjunctiveQuery& q, const GroundDatabase& db) {
  UnionQuery u;
  u.disjuncts.push_back(q);
  return eval(u, db);
}

bool eval(const UnionQuery& q, const GroundDatabase& db) {
  IncompleteDatabase idb(db.facts(), DomainAssignment::make_per_null({}));
  Engine e = build_engine(idb, q);
  BucketView view(e);
  return eval_view(e, view);
}

BigCount brute_count_valuations(const IncompleteDatabase& db,
                                const UnionQuery& q, bool negated,
                                const Caps& caps) {
  Engine e = build_engine(db, q);
  std::uint64_t total = checked_total(db, caps);
  int jobs = effective_jobs(caps, total);
  std::vector<std::uint64_t> hits(jobs, 0);
  auto run = [&](int j) {
    std::uint64_t begin = total / jobs * j + std::min<std::uint64_t>(j, total % jobs);
    std::uint64_t end = begin + total / jobs + (static_cast<std::uint64_t>(j) < total % jobs ? 1 : 0);
    BucketView view(e);
    std::uint64_t count = 0;
    walk(e, begin, end, [&](const std::vector<int>& key) {
      if (eval_key(e, view, key) != negated) ++count;
    });
    hits[j] = count;
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(run, j);
    for (auto& t : pool) t.join();
  }
  BigCount out = 0;
  for (std::uint64_t h : hits) out += BigCount(static_cast<unsigned long>(h));
  return out;
}

BigCount brute_count_completions(const IncompleteDatabase& db,
                                 const UnionQuery& q, bool negated,
                                 const Caps& caps) {
  Engine e = build_engine(db, q);
  std::uint64_t total = checked_total(db, caps);
  int jobs = effective_jobs(caps, total);
  std::vector<CompletionMap> maps(jobs);
  auto run = [&](int j) {
    std::uint64_t begin = total / jobs * j + std::min<std::uint64_t>(j, total % jobs);
    std::uint64_t end = begin + total / jobs + (static_cast<std::uint64_t>(j) < total % jobs ? 1 : 0);
    BucketView view(e);
    CompletionMap& seen = maps[j];
    walk(e, begin, end, [&](const std::vector<int>& key) {
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, eval_key(e, view, key));
      }
    });
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(run, j);
    for (auto& t : pool) t.join();
  }
  CompletionMap merged = std::move(maps[0]);
  for (int j = 1; j < jobs; ++j) {
    merged.merge(maps[j]);
  }
  std::uint64_t count = 0;
  for (const auto& [key, sat] : merged) {
    if (sat != negated) ++count;
  }
  return BigCount(static_cast<unsigned long>(count));
}

// ---------------------------------------------------------------------------
// Graph and CNF input.

int Graph::node_index(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

Graph Graph::parse(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_nodes = false;
  std::vector<std::string> left_names;
  bool saw_left = false;
  std::set<std::pair<int, int>> edge_set;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string word;
    if (!(line >> word)) continue;
    if (word == "nodes:") {
      if (saw_nodes) fail_at(errc::parse, "second nodes line", line_no, 1);
      saw_nodes = true;
      std::string n;
      while (line >> n) {
        if (g.node_index(n) >= 0) {
          fail_at(errc::parse, "node " + n + " listed twice", line_no, 1);
        }
        g.nodes.push_back(n);
      }
    } else if (word == "left:") {
      if (saw_left) fail_at(errc::parse, "second left line", line_no, 1);
      saw_left = true;
      std::string n;
      while (line >> n) left_names.push_back(n);
    } else if (word == "edge") {
      std::string a, b;
      if (!(line >> a >> b)) {
        fail_at(errc::parse, "edge needs two nodes", line_no, 1);
      }
      int ia = g.node_index(a), ib = g.node_index(b);
      if (ia < 0 || ib < 0) {
        fail_at(errc::parse, "edge mentions unknown node", line_no, 1);
      }
      if (ia == ib) {
        fail_at(errc::parse, "self-loop on " + a, line_no, 1);
      }
      if (ia > ib) std::swap(ia, ib);
      edge_set.emplace(ia, ib);
    } else {
      fail_at(errc::parse, "expected nodes:, left:, or edge", line_no, 1);
    }
  }
  if (!saw_nodes) fail(errc::parse, "graph needs a nodes: line");
  g.edges.assign(edge_set.begin(), edge_set.end());
  if (saw_left) {
    g.bipartite = true;
    g.side.assign(g.nodes.size(), 1);
    for (const std::string& n : left_names) {
      int i = g.node_index(n);
      if (i < 0) fail(errc::parse, "left: mentions unknown node " + n);
      g.side[i] = 0;
    }
    for (auto [a, b] : g.edges) {
      if (g.side[a] == g.side[b]) {
        fail(errc::parse, "edge " + g.nodes[a] + " " + g.nodes[b] +
                              " does not cross the bipartition");
      }
    }
  }
  return g;
}

Graph Graph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Graph::parse(buf.str());
}

Cnf3 Cnf3::parse(const std::string& text) {
  Cnf3 f;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_vars = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string word;
    if (!(line >> word)) continue;
    if (word == "vars:") {
      if (saw_vars) fail_at(errc::parse, "second vars line", line_no, 1);
      saw_vars = true;
      if (!(line >> f.num_vars) || f.num_vars < 0) {
        fail_at(errc::parse, "vars: needs a nonnegative integer", line_no, 1);
      }
    } else if (word == "c3") {
      std::array<int, 3> lits{};
      if (!(line >> lits[0] >> lits[1] >> lits[2])) {
        fail_at(errc::parse, "c3 needs three literals", line_no, 1);
      }
      for (int l : lits) {
        if (l == 0) fail_at(errc::parse, "literal 0", line_no, 1);
      }
      f.clauses.push_back(lits);
    } else {
      fail_at(errc::parse, "expected vars: or c3", line_no, 1);
    }
  }
  int max_var = 0;
  for (const auto& c : f.clauses) {
    for (int l : c) max_var = std::max(max_var, std::abs(l));
  }
  if (!saw_vars) {
    f.num_vars = max_var;
  } else if (max_var > f.num_vars) {
    fail(errc::parse, "literal exceeds declared variable count");
  }
  return f;
}

Cnf3 Cnf3::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Cnf3::parse(buf.str());
}

// ---------------------------------------------------------------------------
// Exponential counters for the reduction targets.

static void check_nodes(const Graph& g, const Caps& caps) {
  if (static_cast<int>(g.nodes.size()) > caps.oracle_max_nodes) {
    fail(errc::resource, "graph exceeds " +
                             std::to_string(caps.oracle_max_nodes) +
                             " nodes");
  }
}

static std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(g.nodes.size());
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

BigCount count_3colorings(const Graph& g, const Caps& caps) {
  check_nodes(g, caps);
  auto adj = adjacency(g);
  int n = static_cast<int>(g.nodes.size());
  // BFS order inside components keeps each new node adjacent to a colored
  // one, bounding the search.
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> queue{s};
    seen[s] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      order.push_back(u);
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
  }
  std::vector<int> color(n, -1);
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      ++count;
      return;
    }
    int u = order[k];
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (int v : adj[u]) {
        if (color[v] == c) {
          ok = false;
          break;
        }
      }
      if (ok) {
        color[u] = c;
        self(self, k + 1);
        color[u] = -1;
      }
    }
  };
  dfs(dfs, 0);
  return BigCount(static_cast<unsigned long>(count));
}

BigCount count_independent_sets(const Graph& g, const Caps& caps) {
  check_nodes(g, caps);
  auto adj = adjacency(g);
  int n = static_cast<int>(g.nodes.size());
  std::vector<bool> chosen(n, false);
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, int u) -> void {
    if (u == n) {
      ++count;
      return;
    }
    self(self, u + 1);  // u excluded
    for (int v : adj[u]) {
      if (v < u && chosen[v]) return;
    }
    chosen[u] = true;
    self(self, u + 1);
    chosen[u] = false;
  };
  dfs(dfs, 0);
  return BigCount(static_cast<unsigned long>(count));
}

BigCount count_vertex_covers(const Graph& g, const Caps& caps) {
  check_nodes(g, caps);
  int n = static_cast<int>(g.nodes.size());
  auto adj = adjacency(g);
  std::vector<bool> in_cover(n, false);
  std::uint64_t count = 0;
  // Excluding a node forces all its neighbors in; checked against earlier
  // excluded neighbors only.
  auto dfs = [&](auto&& self, int u) -> void {
    if (u == n) {
      ++count;
      return;
    }
    in_cover[u] = true;
    self(self, u + 1);
    in_cover[u] = false;
    bool ok = true;
    for (int v : adj[u]) {
      if (v < u && !in_cover[v]) {
        ok = false;
        break;
      }
    }
    if (ok) self(self, u + 1);
  };
  dfs(dfs, 0);
  return BigCount(static_cast<unsigned long>(count));
}

namespace {

// Component check: every connected component of the edge subset has at most
// as many edges as nodes.
bool pseudoforest_by_components(const Graph& g,
                                const std::vector<int>& subset) {
  int n = static_cast<int>(g.nodes.size());
  std::vector<int> parent(n), esize(n, 0), vsize(n, 1);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int ei : subset) {
    auto [a, b] = g.edges[ei];
    int ra = find(a), rb = find(b);
    if (ra == rb) {
      esize[ra] += 1;
    } else {
      parent[ra] = rb;
      esize[rb] += esize[ra] + 1;
      vsize[rb] += vsize[ra];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (find(i) == i && esize[i] > vsize[i]) return false;
  }
  return true;
}

// Constructive check: peel degree-one nodes orienting their edge outward;
// a core must decompose into simple cycles. Verifies the orientation it
// builds really has out-degree at most one everywhere.
bool pseudoforest_by_orientation(const Graph& g,
                                 const std::vector<int>& subset) {
  int n = static_cast<int>(g.nodes.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
  std::vector<int> degree(n, 0);
  for (int ei : subset) {
    auto [a, b] = g.edges[ei];
    adj[a].emplace_back(b, ei);
    adj[b].emplace_back(a, ei);
    ++degree[a];
    ++degree[b];
  }
  std::vector<int> outdeg(n, 0);
  std::vector<bool> edge_done(g.edges.size(), false);
  std::vector<int> stack;
  for (int u = 0; u < n; ++u) {
    if (degree[u] == 1) stack.push_back(u);
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (degree[u] != 1) continue;
    for (auto [v, ei] : adj[u]) {
      if (edge_done[ei]) continue;
      edge_done[ei] = true;
      ++outdeg[u];
      --degree[u];
      --degree[v];
      if (degree[v] == 1) stack.push_back(v);
      break;
    }
  }
  // Remaining edges must form disjoint cycles: every touched node has
  // residual degree exactly two. Each cycle orients consistently.
  for (int u = 0; u < n; ++u) {
    if (degree[u] != 0 && degree[u] != 2) return false;
  }
  for (int u = 0; u < n; ++u) {
    if (degree[u] != 2) continue;
    int prev = -1, cur = u;
    do {
      bool advanced = false;
      for (auto [v, ei] : adj[cur]) {
        if (edge_done[ei]) continue;
        edge_done[ei] = true;
        ++outdeg[cur];
        degree[cur] -= 1;
        degree[v] -= 1;
        prev = cur;
        cur = v;
        advanced = true;
        break;
      }
      if (!advanced) return false;
    } while (cur != u && degree[cur] > 0);
  }
  for (int ei : subset) {
    if (!edge_done[ei]) return false;
  }
  for (int u = 0; u < n; ++u) {
    if (outdeg[u] > 1) {
      fail(errc::verification, "pseudoforest orientation is not functional");
    }
  }
  return true;
}

}  // namespace

BigCount count_pseudoforests(const Graph& g, const Caps& caps) {
  check_nodes(g, caps);
  if (!g.bipartite) {
    fail(errc::domain, "pseudoforest counting expects a bipartite graph");
  }
  int m = static_cast<int>(g.edges.size());
  if (m > 24) {
    fail(errc::resource, "pseudoforest counting handles at most 24 edges");
  }
  std::uint64_t count = 0;
  std::vector<int> subset;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    subset.clear();
    for (int i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
    }
    bool a = pseudoforest_by_components(g, subset);
    bool b = pseudoforest_by_orientation(g, subset);
    if (a != b) {
      fail(errc::verification,
           "pseudoforest checks disagree on an edge subset");
    }
    if (a) ++count;
  }
  return BigCount(static_cast<unsigned long>(count));
}

BigCount count_3sat_prefixes(const Cnf3& f, int k, const Caps& caps) {
  if (k < 0 || k > f.num_vars) {
    fail(errc::domain, "prefix length out of range");
  }
  if (f.num_vars > caps.oracle_max_vars) {
    fail(errc::resource, "formula exceeds " +
                             std::to_string(caps.oracle_max_vars) +
                             " variables");
  }
  int n = f.num_vars;
  std::vector<bool> good_prefix(std::size_t{1} << k, false);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool sat = true;
    for (const auto& c : f.clauses) {
      bool clause_ok = false;
      for (int l : c) {
        int var = std::abs(l) - 1;
        bool value = (a >> var) & 1;
        if (value == (l > 0)) {
          clause_ok = true;
          break;
        }
      }
      if (!clause_ok) {
        sat = false;
        break;
      }
    }
    if (sat) good_prefix[a & ((std::uint64_t{1} << k) - 1)] = true;
  }
  std::uint64_t count = 0;
  for (bool b : good_prefix) count += b ? 1 : 0;
  return BigCount(static_cast<unsigned long>(count));
}

}  // namespace nullcount
