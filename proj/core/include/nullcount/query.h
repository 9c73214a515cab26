#pragma once

#include <string>
#include <vector>

namespace nullcount {

struct QueryTerm {
  std::string name;
  bool variable = false;

  friend bool operator==(const QueryTerm&, const QueryTerm&) = default;
  friend auto operator<=>(const QueryTerm&, const QueryTerm&) = default;
};

struct Atom {
  std::string relation;
  std::vector<QueryTerm> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// One conjunct of a union of conjunctive queries. Free variables are those
// listed in the head; a Boolean query has none.
struct ConjunctiveQuery {
  std::vector<Atom> atoms;
  std::vector<std::string> free_vars;

  bool boolean() const { return free_vars.empty(); }
  // No relation name appears twice.
  bool self_join_free() const;
  bool all_atoms_unary() const;
  bool has_constants() const;
  std::vector<std::string> variables() const;  // sorted, deduplicated
  std::vector<std::string> constants() const;  // sorted, deduplicated
  std::vector<std::string> relations() const;  // in atom order

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) =
      default;
};

struct UnionQuery {
  std::vector<ConjunctiveQuery> disjuncts;

  bool single() const { return disjuncts.size() == 1; }
  const ConjunctiveQuery& only() const;

  friend bool operator==(const UnionQuery&, const UnionQuery&) = default;
};

// Grammar, by example:
//   q(X, Y) := R(X, c), S(Y) | T(X, Y)
// The head is optional (then the query is Boolean). Disjuncts are separated
// by '|', atoms by ','. Arguments starting with an uppercase letter are
// variables; everything else is a constant. Zero atoms or zero-arity atoms
// are errors. Errors carry line/column.
UnionQuery parse_query(const std::string& text);
// Single-disjunct convenience; errc::parse when the text has a union.
ConjunctiveQuery parse_cq(const std::string& text);

std::string to_text(const ConjunctiveQuery& q);
std::string to_text(const UnionQuery& q);

}  // namespace nullcount
