#include "nullcount/query.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "nullcount/errors.h"

namespace nullcount {

bool ConjunctiveQuery::self_join_free() const {
  std::set<std::string> seen;
  for (const Atom& a : atoms) {
    if (!seen.insert(a.relation).second) return false;
  }
  return true;
}

bool ConjunctiveQuery::all_atoms_unary() const {
  return std::all_of(atoms.begin(), atoms.end(),
                     [](const Atom& a) { return a.args.size() == 1; });
}

bool ConjunctiveQuery::has_constants() const {
  for (const Atom& a : atoms) {
    for (const QueryTerm& t : a.args) {
      if (!t.variable) return true;
    }
  }
  return false;
}

static std::vector<std::string> collect(const ConjunctiveQuery& q,
                                        bool variables) {
  std::set<std::string> names;
  for (const Atom& a : q.atoms) {
    for (const QueryTerm& t : a.args) {
      if (t.variable == variables) names.insert(t.name);
    }
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> ConjunctiveQuery::variables() const {
  return collect(*this, true);
}

std::vector<std::string> ConjunctiveQuery::constants() const {
  return collect(*this, false);
}

std::vector<std::string> ConjunctiveQuery::relations() const {
  std::vector<std::string> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(a.relation);
  return out;
}

const ConjunctiveQuery& UnionQuery::only() const {
  if (disjuncts.size() != 1) {
    fail(errc::capability, "query is a union of " +
                               std::to_string(disjuncts.size()) +
                               " conjunctive queries");
  }
  return disjuncts.front();
}

namespace {

struct QCursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return at_end() ? '\0' : text[pos]; }
  void advance() {
    if (at_end()) return;
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                         peek() == '\r')) {
      advance();
    }
  }
  [[noreturn]] void fail_here(const std::string& message) const {
    fail_at(errc::parse, message, line, column);
  }
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

std::string read_ident(QCursor& c, const char* what) {
  c.skip_ws();
  std::size_t start = c.pos;
  while (!c.at_end() && ident_char(c.peek())) c.advance();
  if (c.pos == start) c.fail_here(std::string("expected ") + what);
  return c.text.substr(start, c.pos - start);
}

void expect(QCursor& c, char ch) {
  c.skip_ws();
  if (c.peek() != ch) c.fail_here(std::string("expected '") + ch + "'");
  c.advance();
}

bool is_variable_name(const std::string& name) {
  return name[0] >= 'A' && name[0] <= 'Z';
}

QueryTerm read_query_term(QCursor& c) {
  std::string name = read_ident(c, "variable or constant");
  return QueryTerm{name, is_variable_name(name)};
}

Atom read_atom(QCursor& c) {
  Atom a;
  a.relation = read_ident(c, "relation name");
  expect(c, '(');
  c.skip_ws();
  if (c.peek() == ')') c.fail_here("atom needs at least one argument");
  while (true) {
    a.args.push_back(read_query_term(c));
    c.skip_ws();
    if (c.peek() == ',') {
      c.advance();
      continue;
    }
    expect(c, ')');
    break;
  }
  return a;
}

}  // namespace

UnionQuery parse_query(const std::string& text) {
  QCursor c{text};
  std::vector<std::string> head;
  bool has_head = false;

  // Optional head: 'name(X, Y) :='. Detected by look-ahead for ':='.
  {
    QCursor probe = c;
    probe.skip_ws();
    std::size_t start = probe.pos;
    while (!probe.at_end() && ident_char(probe.peek())) probe.advance();
    if (probe.pos > start) {
      probe.skip_ws();
      if (probe.peek() == '(') {
        probe.advance();
        int depth = 1;
        while (!probe.at_end() && depth > 0) {
          if (probe.peek() == '(') ++depth;
          if (probe.peek() == ')') --depth;
          probe.advance();
        }
        probe.skip_ws();
        if (probe.peek() == ':') {
          probe.advance();
          if (probe.peek() == '=') has_head = true;
        }
      }
    }
  }
  if (has_head) {
    read_ident(c, "query name");
    expect(c, '(');
    c.skip_ws();
    if (c.peek() != ')') {
      while (true) {
        std::string v = read_ident(c, "head variable");
        if (!is_variable_name(v)) c.fail_here("head term must be a variable");
        if (std::find(head.begin(), head.end(), v) != head.end()) {
          c.fail_here("head repeats variable " + v);
        }
        head.push_back(v);
        c.skip_ws();
        if (c.peek() == ',') {
          c.advance();
          continue;
        }
        break;
      }
    }
    expect(c, ')');
    expect(c, ':');
    expect(c, '=');
  }

  UnionQuery q;
  while (true) {
    ConjunctiveQuery cq;
    cq.free_vars = head;
    while (true) {
      cq.atoms.push_back(read_atom(c));
      c.skip_ws();
      if (c.peek() == ',') {
        c.advance();
        continue;
      }
      break;
    }
    std::set<std::string> vars;
    for (const Atom& a : cq.atoms) {
      for (const QueryTerm& t : a.args) {
        if (t.variable) vars.insert(t.name);
      }
    }
    for (const std::string& v : head) {
      if (!vars.count(v)) {
        c.fail_here("head variable " + v + " missing from a disjunct");
      }
    }
    q.disjuncts.push_back(std::move(cq));
    c.skip_ws();
    if (c.peek() == '|') {
      c.advance();
      continue;
    }
    break;
  }
  c.skip_ws();
  if (!c.at_end()) c.fail_here("trailing input after query");
  return q;
}

ConjunctiveQuery parse_cq(const std::string& text) {
  UnionQuery q = parse_query(text);
  if (q.disjuncts.size() != 1) {
    fail(errc::parse, "expected a single conjunctive query");
  }
  return q.disjuncts.front();
}

std::string to_text(const ConjunctiveQuery& q) {
  std::string out;
  if (!q.free_vars.empty()) {
    out += "q(";
    for (std::size_t i = 0; i < q.free_vars.size(); ++i) {
      if (i > 0) out += ", ";
      out += q.free_vars[i];
    }
    out += ") := ";
  }
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += q.atoms[i].relation;
    out += '(';
    for (std::size_t j = 0; j < q.atoms[i].args.size(); ++j) {
      if (j > 0) out += ", ";
      out += q.atoms[i].args[j].name;
    }
    out += ')';
  }
  return out;
}

std::string to_text(const UnionQuery& q) {
  std::string out;
  for (std::size_t i = 0; i < q.disjuncts.size(); ++i) {
    if (i > 0) out += " | ";
    out += to_text(q.disjuncts[i]);
  }
  return out;
}

}  // namespace nullcount
