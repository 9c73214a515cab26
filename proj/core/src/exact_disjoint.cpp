#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "exact_internal.h"
#include "nullcount/exact.h"

namespace nullcount {

namespace {

// Relations in which each null occurs, over a unary database.
std::map<std::string, std::set<std::string>> null_occurrences(
    const IncompleteDatabase& db) {
  std::map<std::string, std::set<std::string>> occ;
  for (const Fact& f : db.facts()) {
    for (const Term& t : f.args) {
      if (t.null) occ[t.name].insert(f.relation);
    }
  }
  return occ;
}

}  // namespace

BigCount count_val_constants_dp(const IncompleteDatabase& db,
                                const ConjunctiveQuery& q, const Caps& caps) {
  if (!q.boolean()) fail(errc::capability, "counting needs a Boolean query");
  if (!q.self_join_free())
    fail(errc::capability, "query must be self-join-free");
  for (const Atom& a : q.atoms) {
    if (a.args.size() != 1 || a.args[0].variable)
      fail(errc::capability,
           "constants dp expects atoms of the form R(c) with c a constant");
  }
  if (static_cast<int>(q.atoms.size()) > caps.max_constant_atoms)
    fail(errc::capability, "query has " + std::to_string(q.atoms.size()) +
                               " constant atoms, limit is " +
                               std::to_string(caps.max_constant_atoms));
  for (const Fact& f : db.facts()) {
    if (f.args.size() != 1)
      fail(errc::capability, "constants dp expects a unary database");
  }

  // Atoms already witnessed by a ground fact hold under every valuation.
  std::vector<std::string> target_rel;
  std::vector<std::string> target_const;
  for (const Atom& a : q.atoms) {
    Fact want{a.relation, {constant(a.args[0].name)}};
    bool present = false;
    for (const Fact& f : db.facts_of(a.relation)) {
      if (f == want) {
        present = true;
        break;
      }
    }
    if (!present) {
      target_rel.push_back(a.relation);
      target_const.push_back(a.args[0].name);
    }
  }

  BigCount total = total_valuations(db);
  int k = static_cast<int>(target_rel.size());
  if (k == 0) return total;

  std::map<std::string, std::set<std::string>> occ = null_occurrences(db);

  // Forward pass over the nulls; the state records which targets some
  // already-processed null has hit.
  std::uint32_t full = (1u << k) - 1;
  std::vector<BigCount> cur(std::size_t{1} << k);
  cur[0] = 1;
  for (const std::string& n : db.nulls()) {
    const std::set<std::string>& rels =
        occ.count(n) ? occ.at(n) : std::set<std::string>{};
    std::map<std::uint32_t, unsigned long> hits;
    for (const std::string& v : db.dom(n)) {
      std::uint32_t mask = 0;
      for (int j = 0; j < k; ++j) {
        if (target_const[j] == v && rels.count(target_rel[j])) mask |= 1u << j;
      }
      ++hits[mask];
    }
    std::vector<BigCount> next(cur.size());
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (cur[s] == 0) continue;
      for (const auto& [mask, ways] : hits) next[s | mask] += cur[s] * ways;
    }
    cur = std::move(next);
  }

  BigCount failing = 0;
  for (std::uint32_t s = 0; s < full; ++s) failing += cur[s];
  if (failing + cur[full] != total)
    fail(errc::verification, "state sum disagrees with the valuation total");
  return total - failing;
}

BigCount count_val_disjoint(const IncompleteDatabase& db,
                            const ConjunctiveQuery& q, const Caps& caps) {
  detail::require_algorithm(
      q, {TableKind::naive, DomainKind::non_uniform},
      {ProblemKind::valuations}, "product", "constants-dp");

  BigCount shortcut;
  if (detail::ground_shortcut(db, q, &shortcut)) return shortcut;
  if (detail::atoms_unmatchable(db, q)) return 0;

  // Atoms without constants only require their relation to be nonempty:
  // every variable is local to its atom and position, so any fact matches.
  std::vector<const Atom*> constant_atoms;
  for (const Atom& a : q.atoms) {
    bool has_const = false;
    for (const QueryTerm& t : a.args) has_const |= !t.variable;
    if (has_const) {
      constant_atoms.push_back(&a);
    } else if (db.facts_of(a.relation).empty()) {
      return 0;
    }
  }
  if (constant_atoms.empty()) return total_valuations(db);

  // Project each constant atom's relation onto the constant's column. The
  // query holds exactly when every projected unary target is hit, so the
  // rest of the database contributes a free factor per null.
  std::vector<Fact> projected;
  std::set<Fact> seen;
  ConjunctiveQuery targets;
  for (const Atom* a : constant_atoms) {
    std::size_t col = 0;
    int constants_here = 0;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (!a->args[i].variable) {
        col = i;
        ++constants_here;
      }
    }
    if (constants_here != 1)
      fail(errc::capability, "atom " + a->relation +
                                 " holds more than one constant occurrence");
    targets.atoms.push_back(
        {a->relation, {QueryTerm{a->args[col].name, false}}});
    for (const Fact& f : db.facts_of(a->relation)) {
      Fact unary{a->relation, {f.args[col]}};
      if (seen.insert(unary).second) projected.push_back(unary);
    }
  }

  std::set<std::string> used;
  for (const Fact& f : projected) {
    for (const Term& t : f.args) {
      if (t.null) used.insert(t.name);
    }
  }
  std::map<std::string, Domain> doms;
  for (const std::string& n : used) doms[n] = db.dom(n);
  IncompleteDatabase unary_db(std::move(projected),
                              DomainAssignment::make_per_null(std::move(doms)));

  BigCount free_factor = 1;
  for (const std::string& n : db.nulls()) {
    if (!used.count(n)) free_factor *= db.dom(n).size();
  }
  return count_val_constants_dp(unary_db, targets, caps) * free_factor;
}

}  // namespace nullcount
