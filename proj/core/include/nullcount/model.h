#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nullcount/big.h"

namespace nullcount {

// A term is a constant or a labeled null. Nulls carry the '?' sigil only in
// the text format; the in-memory name excludes it.
struct Term {
  std::string name;
  bool null = false;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

Term constant(std::string name);
Term null(std::string name);

struct Fact {
  std::string relation;
  std::vector<Term> args;

  bool ground() const;
  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

// Sorted, deduplicated constant names.
using Domain = std::vector<std::string>;

// Either one shared domain for every null or one domain per null. Per-null
// assignments may declare nulls that no fact mentions; those still count as
// nulls of the database.
struct DomainAssignment {
  bool uniform = false;
  Domain shared;
  std::map<std::string, Domain> per_null;

  static DomainAssignment make_uniform(Domain values);
  static DomainAssignment make_per_null(std::map<std::string, Domain> values);

  const Domain& of(const std::string& null_name) const;
};

// A relational database whose facts are all ground, kept in canonical order
// (relation name, then argument tuple) with duplicates merged. Value
// equality is completion identity.
class GroundDatabase {
 public:
  GroundDatabase() = default;
  static GroundDatabase from_facts(std::vector<Fact> facts);

  const std::vector<Fact>& facts() const { return facts_; }
  bool empty() const { return facts_.empty(); }
  std::size_t size() const { return facts_.size(); }

  friend bool operator==(const GroundDatabase&, const GroundDatabase&) =
      default;
  friend auto operator<=>(const GroundDatabase&, const GroundDatabase&) =
      default;

 private:
  std::vector<Fact> facts_;
};

// An incomplete database: a finite set of facts over constants and labeled
// nulls plus a domain for every null. Construction validates that relations
// are used with one arity, that every null has a nonempty domain, and that
// no fact repeats.
class IncompleteDatabase {
 public:
  IncompleteDatabase(std::vector<Fact> facts, DomainAssignment domains);

  const std::vector<Fact>& facts() const { return facts_; }
  const DomainAssignment& domains() const { return domains_; }

  // Sorted names of the database's nulls: every null occurring in a fact
  // plus every null with a declared per-null domain.
  const std::vector<std::string>& nulls() const { return nulls_; }
  const Domain& dom(const std::string& null_name) const;

  // Codd: no null occurs twice (across all facts and within a fact).
  bool codd() const { return codd_; }
  // Uniform: all nulls share one domain. A per-null assignment whose
  // domains are all equal counts as uniform.
  bool uniform() const { return uniform_; }
  // The shared domain; errc::setting when the database is not uniform.
  const Domain& uniform_domain() const;

  const std::map<std::string, int>& arities() const { return arities_; }
  std::vector<Fact> facts_of(const std::string& relation) const;

 private:
  std::vector<Fact> facts_;
  DomainAssignment domains_;
  std::vector<std::string> nulls_;
  std::map<std::string, int> arities_;
  bool codd_ = false;
  bool uniform_ = false;
};

// A valuation assigns every null of the database a constant from its domain.
using Valuation = std::map<std::string, std::string>;

GroundDatabase apply_valuation(const IncompleteDatabase& db,
                               const Valuation& v);

// Product of the domain sizes over all nulls.
BigCount total_valuations(const IncompleteDatabase& db);

// The valuation at a given index in enumeration order: nulls sorted by
// name, domains sorted, later nulls varying fastest.
Valuation valuation_at(const IncompleteDatabase& db, const BigCount& index);

// Visits every valuation in enumeration order until the callback returns
// false. Intended for small instances; counting paths use indexed
// enumeration internally.
void for_each_valuation(const IncompleteDatabase& db,
                        const std::function<bool(const Valuation&)>& visit);

// Text format, one item per line:
//   # comment
//   @uniform a b c
//   dom ?n : a b c
//   R(a, ?n, b)
// '@uniform' and 'dom' lines must not be mixed. Errors carry line/column.
IncompleteDatabase parse_database(const std::string& text);
IncompleteDatabase load_database(const std::string& path);
std::string serialize_database(const IncompleteDatabase& db);

// Same fact syntax, nulls and domain lines rejected.
GroundDatabase parse_ground(const std::string& text);
GroundDatabase load_ground(const std::string& path);
std::string serialize_ground(const GroundDatabase& db);

}  // namespace nullcount
