#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "exact_internal.h"
#include "nullcount/exact.h"

namespace nullcount {

namespace detail {

// Valuations of the nulls appearing in relation R's facts under which some
// fact matches the atom. Requires a Codd table: every null is private to one
// position, so fact matches are independent events and variables inside a
// fact intersect candidate sets position-wise.
BigCount codd_atom_count(const IncompleteDatabase& db, const Atom& atom) {
  std::vector<Fact> facts = db.facts_of(atom.relation);
  BigCount total = 1;
  for (const Fact& f : facts) {
    for (const Term& t : f.args) {
      if (t.null) total *= db.dom(t.name).size();
    }
  }

  BigCount nonmatch = 1;
  for (const Fact& f : facts) {
    BigCount fact_total = 1;
    for (const Term& t : f.args) {
      if (t.null) fact_total *= db.dom(t.name).size();
    }

    BigCount match = 1;
    std::map<std::string, std::vector<const Term*>> var_terms;
    for (std::size_t i = 0; i < atom.args.size() && match != 0; ++i) {
      const QueryTerm& a = atom.args[i];
      const Term& t = f.args[i];
      if (a.variable) {
        var_terms[a.name].push_back(&t);
        continue;
      }
      // A constant in the atom pins the position: a fact constant must equal
      // it, a fact null must have it in its domain (one forced value).
      if (t.null) {
        const Domain& d = db.dom(t.name);
        if (!std::binary_search(d.begin(), d.end(), a.name)) match = 0;
      } else if (t.name != a.name) {
        match = 0;
      }
    }
    for (const auto& [var, terms] : var_terms) {
      if (match == 0) break;
      std::set<std::string> candidates;
      bool first = true;
      for (const Term* t : terms) {
        std::set<std::string> here;
        if (t->null) {
          const Domain& d = db.dom(t->name);
          here.insert(d.begin(), d.end());
        } else {
          here.insert(t->name);
        }
        if (first) {
          candidates = std::move(here);
          first = false;
        } else {
          std::set<std::string> merged;
          for (const std::string& v : candidates) {
            if (here.count(v)) merged.insert(v);
          }
          candidates = std::move(merged);
        }
      }
      match *= candidates.size();
    }
    nonmatch *= fact_total - match;
  }
  return total - nonmatch;
}

}  // namespace detail

BigCount count_val_codd(const IncompleteDatabase& db,
                        const ConjunctiveQuery& q) {
  if (!db.codd()) fail(errc::setting, "database is not a Codd table");
  detail::require_algorithm(q, {TableKind::codd, DomainKind::non_uniform},
                            {ProblemKind::valuations}, "codd-per-atom");

  BigCount shortcut;
  if (detail::ground_shortcut(db, q, &shortcut)) return shortcut;
  if (detail::atoms_unmatchable(db, q)) return 0;

  // Atoms touch disjoint relations and, in a Codd table, disjoint nulls, so
  // the satisfying valuations factor per atom; nulls outside the query's
  // relations are free.
  BigCount result = 1;
  std::set<std::string> query_rels;
  for (const Atom& a : q.atoms) query_rels.insert(a.relation);

  for (const Atom& a : q.atoms) {
    result *= detail::codd_atom_count(db, a);
    if (result == 0) return 0;
  }

  std::set<std::string> used;
  for (const Fact& f : db.facts()) {
    if (!query_rels.count(f.relation)) continue;
    for (const Term& t : f.args) {
      if (t.null) used.insert(t.name);
    }
  }
  for (const std::string& n : db.nulls()) {
    if (!used.count(n)) result *= db.dom(n).size();
  }
  return result;
}

}  // namespace nullcount
