#include "nullcount/model.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "nullcount/errors.h"

namespace nullcount {

Term constant(std::string name) { return Term{std::move(name), false}; }
Term null(std::string name) { return Term{std::move(name), true}; }

bool Fact::ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term& t) { return t.null; });
}

static Domain normalize_domain(Domain d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

DomainAssignment DomainAssignment::make_uniform(Domain values) {
  if (values.empty()) fail(errc::domain, "uniform domain must be nonempty");
  DomainAssignment a;
  a.uniform = true;
  a.shared = normalize_domain(std::move(values));
  return a;
}

DomainAssignment DomainAssignment::make_per_null(
    std::map<std::string, Domain> values) {
  DomainAssignment a;
  a.uniform = false;
  for (auto& [name, dom] : values) {
    if (dom.empty()) {
      fail(errc::domain, "domain of ?" + name + " must be nonempty");
    }
    a.per_null.emplace(name, normalize_domain(std::move(dom)));
  }
  return a;
}

const Domain& DomainAssignment::of(const std::string& null_name) const {
  if (uniform) return shared;
  auto it = per_null.find(null_name);
  if (it == per_null.end()) {
    fail(errc::domain, "null ?" + null_name + " has no domain");
  }
  return it->second;
}

GroundDatabase GroundDatabase::from_facts(std::vector<Fact> facts) {
  std::map<std::string, int> arities;
  for (const Fact& f : facts) {
    if (!f.ground()) {
      fail(errc::domain, "ground database fact mentions a null");
    }
    if (f.args.empty()) fail(errc::domain, "zero-arity fact");
    auto [it, fresh] = arities.emplace(f.relation, f.args.size());
    if (!fresh && it->second != static_cast<int>(f.args.size())) {
      fail(errc::domain, "relation " + f.relation + " used with two arities");
    }
  }
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  GroundDatabase db;
  db.facts_ = std::move(facts);
  return db;
}

IncompleteDatabase::IncompleteDatabase(std::vector<Fact> facts,
                                       DomainAssignment domains)
    : facts_(std::move(facts)), domains_(std::move(domains)) {
  std::set<std::string> null_names;
  std::map<std::string, int> occurrences;
  for (const Fact& f : facts_) {
    if (f.args.empty()) fail(errc::domain, "zero-arity fact");
    auto [it, fresh] =
        arities_.emplace(f.relation, static_cast<int>(f.args.size()));
    if (!fresh && it->second != static_cast<int>(f.args.size())) {
      fail(errc::domain, "relation " + f.relation + " used with two arities");
    }
    for (const Term& t : f.args) {
      if (t.name.empty()) fail(errc::domain, "empty term name");
      if (t.null) {
        null_names.insert(t.name);
        occurrences[t.name] += 1;
      }
    }
  }
  std::sort(facts_.begin(), facts_.end());
  auto dup = std::adjacent_find(facts_.begin(), facts_.end());
  if (dup != facts_.end()) {
    fail(errc::domain, "duplicate fact in relation " + dup->relation);
  }
  if (!domains_.uniform) {
    for (const auto& [name, dom] : domains_.per_null) {
      if (dom.empty()) {
        fail(errc::domain, "domain of ?" + name + " must be nonempty");
      }
      null_names.insert(name);
    }
  } else if (domains_.shared.empty()) {
    fail(errc::domain, "uniform domain must be nonempty");
  }
  for (const std::string& name : null_names) {
    domains_.of(name);  // throws when a used null lacks a domain
  }
  nulls_.assign(null_names.begin(), null_names.end());

  codd_ = std::all_of(occurrences.begin(), occurrences.end(),
                      [](const auto& e) { return e.second <= 1; });
  if (domains_.uniform) {
    uniform_ = true;
  } else if (nulls_.empty()) {
    uniform_ = true;
  } else {
    const Domain& first = domains_.of(nulls_.front());
    uniform_ = std::all_of(
        nulls_.begin(), nulls_.end(),
        [&](const std::string& n) { return domains_.of(n) == first; });
  }
}

const Domain& IncompleteDatabase::dom(const std::string& null_name) const {
  return domains_.of(null_name);
}

const Domain& IncompleteDatabase::uniform_domain() const {
  if (!uniform_) fail(errc::setting, "database is not uniform");
  if (domains_.uniform) return domains_.shared;
  if (nulls_.empty()) {
    static const Domain empty;
    return empty;
  }
  return domains_.of(nulls_.front());
}

std::vector<Fact> IncompleteDatabase::facts_of(
    const std::string& relation) const {
  std::vector<Fact> out;
  for (const Fact& f : facts_) {
    if (f.relation == relation) out.push_back(f);
  }
  return out;
}

GroundDatabase apply_valuation(const IncompleteDatabase& db,
                               const Valuation& v) {
  std::vector<Fact> ground;
  ground.reserve(db.facts().size());
  for (const Fact& f : db.facts()) {
    Fact g;
    g.relation = f.relation;
    g.args.reserve(f.args.size());
    for (const Term& t : f.args) {
      if (!t.null) {
        g.args.push_back(t);
        continue;
      }
      auto it = v.find(t.name);
      if (it == v.end()) {
        fail(errc::domain, "valuation misses null ?" + t.name);
      }
      const Domain& d = db.dom(t.name);
      if (!std::binary_search(d.begin(), d.end(), it->second)) {
        fail(errc::domain, "valuation sends ?" + t.name +
                               " outside its domain: " + it->second);
      }
      g.args.push_back(constant(it->second));
    }
    ground.push_back(std::move(g));
  }
  return GroundDatabase::from_facts(std::move(ground));
}

BigCount total_valuations(const IncompleteDatabase& db) {
  BigCount total = 1;
  for (const std::string& n : db.nulls()) {
    total *= static_cast<unsigned long>(db.dom(n).size());
  }
  return total;
}

Valuation valuation_at(const IncompleteDatabase& db, const BigCount& index) {
  if (sgn(index) < 0 || index >= total_valuations(db)) {
    fail(errc::domain, "valuation index out of range");
  }
  const auto& nulls = db.nulls();
  Valuation v;
  BigCount rest = index;
  for (auto it = nulls.rbegin(); it != nulls.rend(); ++it) {
    const Domain& d = db.dom(*it);
    unsigned long digit =
        mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(),
                      static_cast<unsigned long>(d.size()));
    v.emplace(*it, d[digit]);
  }
  return v;
}

void for_each_valuation(const IncompleteDatabase& db,
                        const std::function<bool(const Valuation&)>& visit) {
  const auto& nulls = db.nulls();
  std::size_t n = nulls.size();
  std::vector<const Domain*> doms(n);
  for (std::size_t i = 0; i < n; ++i) doms[i] = &db.dom(nulls[i]);
  std::vector<std::size_t> digit(n, 0);
  Valuation v;
  for (std::size_t i = 0; i < n; ++i) v[nulls[i]] = (*doms[i])[0];
  while (true) {
    if (!visit(v)) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < doms[i]->size()) {
        v[nulls[i]] = (*doms[i])[digit[i]];
        break;
      }
      digit[i] = 0;
      v[nulls[i]] = (*doms[i])[0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

// ---------------------------------------------------------------------------
// Text format.

namespace {

struct Cursor {
  const std::string& line;
  int line_no;
  std::size_t pos = 0;

  int column() const { return static_cast<int>(pos) + 1; }
  bool at_end() const { return pos >= line.size(); }
  char peek() const { return at_end() ? '\0' : line[pos]; }
  void skip_ws() {
    while (!at_end() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  [[noreturn]] void fail_here(const std::string& message) const {
    fail_at(errc::parse, message, line_no, column());
  }
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

std::string read_ident(Cursor& c, const char* what) {
  c.skip_ws();
  std::size_t start = c.pos;
  while (!c.at_end() && ident_char(c.line[c.pos])) ++c.pos;
  if (c.pos == start) c.fail_here(std::string("expected ") + what);
  return c.line.substr(start, c.pos - start);
}

void expect(Cursor& c, char ch) {
  c.skip_ws();
  if (c.peek() != ch) {
    c.fail_here(std::string("expected '") + ch + "'");
  }
  ++c.pos;
}

Term read_term(Cursor& c) {
  c.skip_ws();
  if (c.peek() == '?') {
    ++c.pos;
    return null(read_ident(c, "null name after '?'"));
  }
  return constant(read_ident(c, "constant"));
}

Fact read_fact(Cursor& c) {
  Fact f;
  f.relation = read_ident(c, "relation name");
  expect(c, '(');
  c.skip_ws();
  if (c.peek() == ')') c.fail_here("atom needs at least one argument");
  while (true) {
    f.args.push_back(read_term(c));
    c.skip_ws();
    if (c.peek() == ',') {
      ++c.pos;
      continue;
    }
    expect(c, ')');
    break;
  }
  c.skip_ws();
  if (!c.at_end()) c.fail_here("trailing input after fact");
  return f;
}

std::vector<std::string> read_value_list(Cursor& c) {
  std::vector<std::string> values;
  while (true) {
    c.skip_ws();
    if (c.at_end()) break;
    values.push_back(read_ident(c, "constant"));
  }
  return values;
}

struct ParsedText {
  std::vector<Fact> facts;
  bool saw_uniform = false;
  Domain uniform_values;
  std::map<std::string, Domain> per_null;
  int uniform_line = 0;
};

ParsedText scan_database(const std::string& text) {
  ParsedText out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_dom = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    Cursor c{raw, line_no};
    c.skip_ws();
    if (c.at_end()) continue;
    if (c.peek() == '@') {
      ++c.pos;
      std::string word = read_ident(c, "directive");
      if (word != "uniform") c.fail_here("unknown directive @" + word);
      if (out.saw_uniform) c.fail_here("second @uniform line");
      if (saw_dom) c.fail_here("@uniform mixed with dom lines");
      out.saw_uniform = true;
      out.uniform_line = line_no;
      out.uniform_values = read_value_list(c);
      if (out.uniform_values.empty()) {
        c.fail_here("@uniform needs at least one value");
      }
      continue;
    }
    // 'dom' only opens a domain line when followed by a null.
    std::size_t mark = c.pos;
    std::string word = read_ident(c, "relation or dom");
    c.skip_ws();
    if (word == "dom" && c.peek() == '?') {
      if (out.saw_uniform) c.fail_here("dom line mixed with @uniform");
      saw_dom = true;
      ++c.pos;
      std::string name = read_ident(c, "null name after '?'");
      expect(c, ':');
      Domain values = read_value_list(c);
      if (values.empty()) c.fail_here("empty domain for ?" + name);
      if (!out.per_null.emplace(name, std::move(values)).second) {
        c.fail_here("second domain for ?" + name);
      }
      continue;
    }
    c.pos = mark;
    out.facts.push_back(read_fact(c));
  }
  return out;
}

}  // namespace

IncompleteDatabase parse_database(const std::string& text) {
  ParsedText p = scan_database(text);
  // The text format merges duplicate facts silently.
  std::sort(p.facts.begin(), p.facts.end());
  p.facts.erase(std::unique(p.facts.begin(), p.facts.end()), p.facts.end());
  DomainAssignment doms =
      p.saw_uniform ? DomainAssignment::make_uniform(p.uniform_values)
                    : DomainAssignment::make_per_null(std::move(p.per_null));
  try {
    return IncompleteDatabase(std::move(p.facts), std::move(doms));
  } catch (const error& e) {
    if (e.kind() == errc::domain) {
      throw error(errc::parse, e.what());
    }
    throw;
  }
}

IncompleteDatabase load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_database(buf.str());
}

static void append_fact(std::string& out, const Fact& f) {
  out += f.relation;
  out += '(';
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i > 0) out += ", ";
    if (f.args[i].null) out += '?';
    out += f.args[i].name;
  }
  out += ")\n";
}

std::string serialize_database(const IncompleteDatabase& db) {
  std::string out;
  if (db.domains().uniform) {
    out += "@uniform";
    for (const std::string& v : db.domains().shared) {
      out += ' ';
      out += v;
    }
    out += '\n';
  } else {
    for (const std::string& n : db.nulls()) {
      out += "dom ?" + n + " :";
      for (const std::string& v : db.dom(n)) {
        out += ' ';
        out += v;
      }
      out += '\n';
    }
  }
  for (const Fact& f : db.facts()) append_fact(out, f);
  return out;
}

GroundDatabase parse_ground(const std::string& text) {
  ParsedText p = scan_database(text);
  if (p.saw_uniform || !p.per_null.empty()) {
    fail(errc::parse, "ground database must not declare domains");
  }
  for (const Fact& f : p.facts) {
    if (!f.ground()) {
      fail(errc::parse, "ground database fact mentions a null");
    }
  }
  try {
    return GroundDatabase::from_facts(std::move(p.facts));
  } catch (const error& e) {
    if (e.kind() == errc::domain) throw error(errc::parse, e.what());
    throw;
  }
}

GroundDatabase load_ground(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ground(buf.str());
}

std::string serialize_ground(const GroundDatabase& db) {
  std::string out;
  for (const Fact& f : db.facts()) append_fact(out, f);
  return out;
}

}  // namespace nullcount
