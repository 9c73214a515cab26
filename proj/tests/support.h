#pragma once

// Random instances for the randomized tests. Each generator emits a
// (database, query) pair inside the class one exact algorithm covers, so
// its count can be checked against brute-force enumeration.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nullcount/model.h"
#include "nullcount/query.h"

namespace testsupport {

using RNG = std::mt19937;

inline int pick(RNG& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(RNG& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline std::string cname(int i) { return "c" + std::to_string(i); }

struct Instance {
  nullcount::IncompleteDatabase db;
  nullcount::ConjunctiveQuery q;
  bool negated = false;
};

// Rejects instances whose valuation space is too large to brute-force.
template <class Gen>
Instance small_instance(RNG& rng, Gen gen, unsigned long bound = 4096) {
  for (;;) {
    Instance inst = gen(rng);
    if (nullcount::total_valuations(inst.db) <= bound) return inst;
  }
}

// Nonempty random subset of {c0..c(pool-1)}.
inline nullcount::Domain random_domain(RNG& rng, int pool) {
  nullcount::Domain d;
  for (int i = 0; i < pool; ++i) {
    if (chance(rng, 0.6)) d.push_back(cname(i));
  }
  if (d.empty()) d.push_back(cname(pick(rng, 0, pool - 1)));
  return d;
}

// A constant argument: usually from the domain pool, sometimes an outsider.
inline nullcount::Term random_constant(RNG& rng, int pool) {
  if (chance(rng, 0.15)) return nullcount::constant("z_out");
  return nullcount::constant(cname(pick(rng, 0, pool - 1)));
}

struct DbBuilder {
  RNG& rng;
  int pool;        // constants c0..c(pool-1)
  bool codd;       // fresh null per occurrence
  bool uniform;    // one shared domain
  int next_null = 0;
  int naive_nulls;  // null name pool size when not Codd
  std::set<std::string> used;

  DbBuilder(RNG& r, int pool_, bool codd_, bool uniform_, int naive_nulls_ = 4)
      : rng(r), pool(pool_), codd(codd_), uniform(uniform_),
        naive_nulls(naive_nulls_) {}

  nullcount::Term null_term() {
    std::string n = codd ? "n" + std::to_string(next_null++)
                         : "n" + std::to_string(pick(rng, 0, naive_nulls - 1));
    used.insert(n);
    return nullcount::null(n);
  }

  nullcount::Term arg(double null_prob) {
    if (chance(rng, null_prob)) return null_term();
    return random_constant(rng, pool);
  }

  nullcount::IncompleteDatabase finish(std::vector<nullcount::Fact> facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    if (uniform) {
      nullcount::Domain d = random_domain(rng, pool);
      return nullcount::IncompleteDatabase(
          std::move(facts), nullcount::DomainAssignment::make_uniform(d));
    }
    std::map<std::string, nullcount::Domain> doms;
    for (const std::string& n : used) doms[n] = random_domain(rng, pool);
    if (chance(rng, 0.2)) doms["n_unused"] = random_domain(rng, pool);
    return nullcount::IncompleteDatabase(
        std::move(facts),
        nullcount::DomainAssignment::make_per_null(std::move(doms)));
  }
};

inline std::vector<nullcount::Fact> random_facts(
    DbBuilder& b, const std::map<std::string, int>& arities, int max_facts,
    double null_prob) {
  std::vector<nullcount::Fact> facts;
  for (const auto& [rel, arity] : arities) {
    int n = pick(b.rng, 0, max_facts);
    for (int i = 0; i < n; ++i) {
      nullcount::Fact f{rel, {}};
      for (int p = 0; p < arity; ++p) f.args.push_back(b.arg(null_prob));
      facts.push_back(std::move(f));
    }
  }
  return facts;
}

// {naive, non-uniform} "product"/"constants-dp": every variable occurs
// once, at most one constant per atom.
inline Instance gen_disjoint(RNG& rng) {
  int rels = pick(rng, 1, 3);
  std::map<std::string, int> arities;
  nullcount::ConjunctiveQuery q;
  int var = 0;
  for (int r = 0; r < rels; ++r) {
    std::string rel = "R" + std::to_string(r);
    int arity = pick(rng, 1, 3);
    arities[rel] = arity;
    nullcount::Atom a{rel, {}};
    int const_pos = chance(rng, 0.6) ? pick(rng, 0, arity - 1) : -1;
    for (int p = 0; p < arity; ++p) {
      if (p == const_pos) {
        a.args.push_back(
            {chance(rng, 0.2) ? "z_out" : cname(pick(rng, 0, 3)), false});
      } else {
        a.args.push_back({"V" + std::to_string(var++), true});
      }
    }
    q.atoms.push_back(std::move(a));
  }
  DbBuilder b(rng, 4, false, false);
  auto facts = random_facts(b, arities, 3, 0.55);
  return {b.finish(std::move(facts)), std::move(q)};
}

// {codd, non-uniform} "codd-per-atom": atoms touch disjoint variable sets;
// repeated variables and several constants per atom are fine.
inline Instance gen_codd(RNG& rng) {
  int rels = pick(rng, 1, 3);
  std::map<std::string, int> arities;
  nullcount::ConjunctiveQuery q;
  int var = 0;
  for (int r = 0; r < rels; ++r) {
    std::string rel = "R" + std::to_string(r);
    int arity = pick(rng, 1, 3);
    arities[rel] = arity;
    nullcount::Atom a{rel, {}};
    std::vector<std::string> local;
    for (int p = 0; p < arity; ++p) {
      if (chance(rng, 0.35)) {
        a.args.push_back(
            {chance(rng, 0.2) ? "z_out" : cname(pick(rng, 0, 3)), false});
      } else if (!local.empty() && chance(rng, 0.3)) {
        a.args.push_back({local[pick(rng, 0, int(local.size()) - 1)], true});
      } else {
        local.push_back("V" + std::to_string(var++));
        a.args.push_back({local.back(), true});
      }
    }
    q.atoms.push_back(std::move(a));
  }
  DbBuilder b(rng, 4, true, false);
  auto facts = random_facts(b, arities, 2, 0.5);
  return {b.finish(std::move(facts)), std::move(q)};
}

// {naive, uniform} "uniform-naive-ie": constant-free, no repeated variable
// in an atom, at most one shared variable touching each atom.
inline Instance gen_uniform_naive(RNG& rng) {
  int m = pick(rng, 1, 3);
  std::vector<int> arity(m);
  std::vector<int> shared_slot(m, -1);  // position of the atom's shared var
  std::map<std::string, int> arities;
  for (int i = 0; i < m; ++i) {
    arity[i] = pick(rng, 1, 3);
    arities["R" + std::to_string(i)] = arity[i];
  }
  int shared_vars = m >= 2 ? pick(rng, 0, 2) : 0;
  std::vector<std::vector<int>> members(shared_vars);
  std::vector<int> open(m);
  for (int i = 0; i < m; ++i) open[i] = i;
  for (int s = 0; s < shared_vars && int(open.size()) >= 2; ++s) {
    std::shuffle(open.begin(), open.end(), rng);
    int take = pick(rng, 2, int(open.size()));
    members[s].assign(open.begin(), open.begin() + take);
    open.erase(open.begin(), open.begin() + take);
  }
  nullcount::ConjunctiveQuery q;
  int var = 0;
  for (int i = 0; i < m; ++i) {
    nullcount::Atom a{"R" + std::to_string(i), {}};
    for (int p = 0; p < arity[i]; ++p) a.args.push_back({"", true});
    q.atoms.push_back(std::move(a));
  }
  for (int s = 0; s < shared_vars; ++s) {
    for (int i : members[s]) {
      shared_slot[i] = pick(rng, 0, arity[i] - 1);
      q.atoms[i].args[shared_slot[i]] = {"S" + std::to_string(s), true};
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < arity[i]; ++p) {
      if (q.atoms[i].args[p].name.empty()) {
        q.atoms[i].args[p] = {"V" + std::to_string(var++), true};
      }
    }
  }
  DbBuilder b(rng, 4, false, true);
  auto facts = random_facts(b, arities, 3, 0.55);
  return {b.finish(std::move(facts)), std::move(q)};
}

// {codd, uniform} "uniform-codd-star": constant-free components that share
// exactly one variable, present in every atom of the component.
inline Instance gen_uniform_codd(RNG& rng) {
  int comps = pick(rng, 1, 2);
  nullcount::ConjunctiveQuery q;
  std::map<std::string, int> arities;
  int var = 0;
  int rel = 0;
  for (int c = 0; c < comps; ++c) {
    int m = pick(rng, 1, 3);
    std::string center = "S" + std::to_string(c);
    for (int i = 0; i < m; ++i) {
      std::string name = "R" + std::to_string(rel++);
      int arity = pick(rng, 1, 3);
      arities[name] = arity;
      nullcount::Atom a{name, {}};
      std::vector<std::string> local;
      int center_pos = m >= 2 ? pick(rng, 0, arity - 1) : -1;
      for (int p = 0; p < arity; ++p) {
        if (p == center_pos || (m >= 2 && chance(rng, 0.15))) {
          a.args.push_back({center, true});
        } else if (!local.empty() && chance(rng, 0.2)) {
          a.args.push_back({local[pick(rng, 0, int(local.size()) - 1)], true});
        } else {
          local.push_back("V" + std::to_string(var++));
          a.args.push_back({local.back(), true});
        }
      }
      q.atoms.push_back(std::move(a));
    }
  }
  DbBuilder b(rng, 4, true, true);
  auto facts = random_facts(b, arities, 2, 0.5);
  return {b.finish(std::move(facts)), std::move(q)};
}

// Uniform unary completion instances for "uniform-unary-comp".
inline Instance gen_uniform_comp(RNG& rng) {
  int rels = pick(rng, 1, 3);
  std::map<std::string, int> arities;
  nullcount::ConjunctiveQuery q;
  std::vector<std::string> vars = {"X", "Y", "Z"};
  for (int r = 0; r < rels; ++r) {
    std::string rel = "R" + std::to_string(r);
    arities[rel] = 1;
    nullcount::Atom a{rel, {}};
    if (chance(rng, 0.35)) {
      a.args.push_back(
          {chance(rng, 0.25) ? "z_out" : cname(pick(rng, 0, 3)), false});
    } else {
      a.args.push_back({vars[pick(rng, 0, pick(rng, 0, 2))], true});
    }
    q.atoms.push_back(std::move(a));
  }
  // Facts only for query relations, sometimes leaving some empty.
  std::map<std::string, int> db_rels;
  for (const auto& [rel, arity] : arities) {
    if (chance(rng, 0.8)) db_rels[rel] = arity;
  }
  DbBuilder b(rng, 4, false, true, 3);
  auto facts = random_facts(b, db_rels, 4, 0.5);
  Instance inst{b.finish(std::move(facts)), std::move(q)};
  inst.negated = chance(rng, 0.5);
  return inst;
}

// Unary constant-only queries for the constants DP.
inline Instance gen_constants_dp(RNG& rng) {
  int rels = pick(rng, 1, 3);
  std::map<std::string, int> arities;
  nullcount::ConjunctiveQuery q;
  for (int r = 0; r < rels; ++r) {
    std::string rel = "R" + std::to_string(r);
    arities[rel] = 1;
    q.atoms.push_back(
        {rel, {{chance(rng, 0.2) ? "z_out" : cname(pick(rng, 0, 3)), false}}});
  }
  DbBuilder b(rng, 4, false, false);
  auto facts = random_facts(b, arities, 3, 0.6);
  return {b.finish(std::move(facts)), std::move(q)};
}

}  // namespace testsupport
