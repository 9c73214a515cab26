// Command line front end: classify queries, count valuations or
// completions, check completion membership, and build the reduction
// gadgets.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullcount/approx.h"
#include "nullcount/big.h"
#include "nullcount/caps.h"
#include "nullcount/classify.h"
#include "nullcount/compsem.h"
#include "nullcount/errors.h"
#include "nullcount/gadgets.h"
#include "nullcount/model.h"
#include "nullcount/oracle.h"
#include "nullcount/patterns.h"
#include "nullcount/plan.h"
#include "nullcount/query.h"

using json = nlohmann::ordered_json;
namespace nc = nullcount;

namespace {

int exit_code(nc::errc kind) {
  switch (kind) {
    case nc::errc::parse:
    case nc::errc::domain:
      return 2;
    case nc::errc::setting:
    case nc::errc::capability:
      return 3;
    case nc::errc::resource:
      return 4;
    case nc::errc::verification:
      return 5;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) nc::fail(nc::errc::parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int default_jobs() {
  const char* env = std::getenv("NULLCOUNT_JOBS");
  if (!env) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(v);
}

nc::TableKind parse_table(const std::string& s) {
  if (s == "naive") return nc::TableKind::naive;
  if (s == "codd") return nc::TableKind::codd;
  nc::fail(nc::errc::domain, "unknown table kind " + s + " (naive or codd)");
}

nc::DomainKind parse_domain(const std::string& s) {
  if (s == "uniform") return nc::DomainKind::uniform;
  if (s == "non-uniform") return nc::DomainKind::non_uniform;
  nc::fail(nc::errc::domain,
           "unknown domain kind " + s + " (uniform or non-uniform)");
}

nc::ProblemKind parse_problem(const std::string& s) {
  if (s == "val" || s == "valuations") return nc::ProblemKind::valuations;
  if (s == "comp" || s == "completions") return nc::ProblemKind::completions;
  nc::fail(nc::errc::domain, "unknown problem " + s + " (val or comp)");
}

const char* table_name(nc::TableKind t) {
  return t == nc::TableKind::codd ? "codd" : "naive";
}

const char* domain_name(nc::DomainKind d) {
  return d == nc::DomainKind::uniform ? "uniform" : "non-uniform";
}

const char* problem_name(nc::ProblemKind k) {
  return k == nc::ProblemKind::valuations ? "valuations" : "completions";
}

std::string setting_text(nc::Setting s) {
  return std::string(table_name(s.table)) + " table, " +
         domain_name(s.domain) + " domain";
}

std::string verdict_line(const nc::ExactVerdict& v) {
  std::string line = nc::exact_status_name(v.status);
  if (v.status == nc::ExactStatus::tractable) line += " (" + v.algorithm + ")";
  if (!v.witnesses.empty()) {
    line += " (witnesses:";
    for (const std::string& w : v.witnesses) line += " " + w + ";";
    line.back() = ')';
  }
  if (!v.explanation.empty()) line += ": " + v.explanation;
  return line;
}

json verdict_json(const nc::ExactVerdict& v) {
  json j;
  j["status"] = nc::exact_status_name(v.status);
  if (v.status == nc::ExactStatus::tractable) j["algorithm"] = v.algorithm;
  if (!v.witnesses.empty()) j["witnesses"] = v.witnesses;
  j["explanation"] = v.explanation;
  return j;
}

// Fixed six fractional digits, truncated toward zero; numerator >= 0.
std::string rational_decimal(const nc::BigCount& num, std::uint64_t den) {
  nc::BigCount d(std::to_string(den));
  nc::BigCount whole = num / d;
  nc::BigCount frac = (num % d) * 1000000 / d;
  std::string fs = nc::decimal(frac);
  fs.insert(0, 6 - fs.size(), '0');
  return nc::decimal(whole) + "." + fs;
}

struct QueryInput {
  std::string text;
  std::string file;

  nc::UnionQuery get() const {
    if (text.empty() == file.empty()) {
      nc::fail(nc::errc::domain, "give a query with -q or --query-file");
    }
    return nc::parse_query(text.empty() ? read_file(file) : text);
  }
};

void add_query_options(CLI::App* cmd, QueryInput& q) {
  cmd->add_option("-q,--query", q.text, "query text, e.g. 'R(X), S(X, Y)'");
  cmd->add_option("--query-file", q.file, "file holding the query text");
}

struct SettingFlags {
  std::string table;
  std::string domain;

  std::optional<nc::TableKind> table_kind() const {
    if (table.empty()) return std::nullopt;
    return parse_table(table);
  }
  std::optional<nc::DomainKind> domain_kind() const {
    if (domain.empty()) return std::nullopt;
    return parse_domain(domain);
  }
};

void add_setting_options(CLI::App* cmd, SettingFlags& s) {
  cmd->add_option("--table", s.table, "treat the database as naive or codd");
  cmd->add_option("--domain", s.domain,
                  "treat the domains as uniform or non-uniform");
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  QueryInput query;
  std::string db_file;
  SettingFlags setting;
  std::string problem = "val";
  bool negated = false;
  bool json_out = false;
};

void run_classify(const ClassifyArgs& a) {
  nc::UnionQuery q = a.query.get();
  nc::Problem problem{parse_problem(a.problem), a.negated};

  nc::Setting setting;
  std::string origin;
  if (!a.db_file.empty()) {
    nc::IncompleteDatabase db = nc::load_database(a.db_file);
    setting = nc::resolve_setting(db, a.setting.table_kind(),
                                  a.setting.domain_kind());
    origin = "inferred from database";
  } else {
    setting.table = a.setting.table_kind().value_or(nc::TableKind::naive);
    setting.domain =
        a.setting.domain_kind().value_or(nc::DomainKind::non_uniform);
    origin = a.setting.table.empty() && a.setting.domain.empty()
                 ? "default"
                 : "claimed";
  }

  bool boolean = true;
  for (const nc::ConjunctiveQuery& cq : q.disjuncts) {
    boolean = boolean && cq.boolean();
  }
  if (!boolean && !q.single()) {
    nc::fail(nc::errc::capability,
             "free variables in a union are not classified");
  }

  json out;
  out["query"] = nc::to_text(q);
  out["setting"] = {{"table", table_name(setting.table)},
                    {"domain", domain_name(setting.domain)},
                    {"origin", origin}};
  out["problem"] = problem_name(problem.kind);
  out["negated"] = problem.negated;

  if (!a.json_out) {
    std::cout << "query: " << nc::to_text(q) << "\n";
    std::cout << "setting: " << setting_text(setting) << " (" << origin
              << ")\n";
    std::cout << "problem: " << (problem.negated ? "negated " : "")
              << problem_name(problem.kind) << "\n";
  }

  if (!boolean) {
    nc::ParametricVerdict pv =
        nc::classify_parametric(q.only(), setting, problem);
    const std::vector<std::string>& fv = q.only().free_vars;
    if (a.json_out) {
      json classes = json::array();
      for (const auto& [constants, verdict] : pv.classes) {
        json cls;
        json assignment;
        for (std::size_t i = 0; i < fv.size(); ++i) {
          assignment[fv[i]] = constants[i];
        }
        cls["assignment"] = assignment;
        cls["exact"] = verdict_json(verdict);
        classes.push_back(cls);
      }
      out["parametric"] = {{"overall", nc::exact_status_name(pv.overall)},
                           {"classes", classes}};
      std::cout << out.dump(2) << "\n";
      return;
    }
    std::cout << "parametric classes:\n";
    for (const auto& [constants, verdict] : pv.classes) {
      std::string head;
      for (std::size_t i = 0; i < fv.size(); ++i) {
        if (i) head += ", ";
        head += fv[i] + " = " + constants[i];
      }
      std::cout << "  " << head << ": " << verdict_line(verdict) << "\n";
    }
    std::cout << "overall: " << nc::exact_status_name(pv.overall) << "\n";
    return;
  }

  bool cell = q.single() && q.only().self_join_free();
  nc::ApproxVerdict av = nc::classify_approx(q, setting, problem);
  if (cell) {
    nc::ExactVerdict ev = nc::classify_exact(q.only(), setting, problem);
    if (a.json_out) {
      out["exact"] = verdict_json(ev);
    } else {
      std::cout << "exact: " << verdict_line(ev) << "\n";
    }
  } else {
    const char* why = q.single() ? "self-join" : "union";
    if (a.json_out) {
      out["exact"] = {{"status", "unclassified"}, {"explanation", why}};
    } else {
      std::cout << "exact: unclassified (" << why << ")\n";
    }
  }
  if (a.json_out) {
    out["approx"] = {{"status", nc::approx_status_name(av.status)},
                     {"explanation", av.explanation}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "approx: " << nc::approx_status_name(av.status) << ": "
              << av.explanation << "\n";
  }
}

// ------------------------------------------------------------------- count

struct CountArgs {
  QueryInput query;
  std::string db_file;
  SettingFlags setting;
  std::string problem = "val";
  bool negated = false;
  std::string mode = "auto";
  double epsilon = 0.2;
  double delta = 0.25;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::uint64_t brute_cap = 0;
  bool json_out = false;
};

void run_count(const CountArgs& a) {
  nc::IncompleteDatabase db = nc::load_database(a.db_file);
  nc::UnionQuery q = a.query.get();
  nc::Problem problem{parse_problem(a.problem), a.negated};

  nc::PlanParams params;
  if (a.mode == "auto") {
    params.mode = nc::CountMode::automatic;
  } else if (a.mode == "exact") {
    params.mode = nc::CountMode::exact;
  } else if (a.mode == "brute") {
    params.mode = nc::CountMode::brute;
  } else if (a.mode == "approx") {
    params.mode = nc::CountMode::approx;
  } else {
    nc::fail(nc::errc::domain,
             "unknown mode " + a.mode + " (auto, exact, brute, approx)");
  }
  params.epsilon = a.epsilon;
  params.delta = a.delta;
  params.seed = a.seed;
  params.table = a.setting.table_kind();
  params.domain = a.setting.domain_kind();
  params.caps.jobs = a.jobs > 0 ? a.jobs : default_jobs();
  if (a.brute_cap > 0) params.caps.brute_valuations = a.brute_cap;

  nc::PlanResult r = nc::plan_and_count(db, q, problem, params);

  if (a.json_out) {
    json out;
    out["query"] = nc::to_text(q);
    out["setting"] = {{"table", table_name(r.setting.table)},
                      {"domain", domain_name(r.setting.domain)}};
    out["problem"] = problem_name(problem.kind);
    out["negated"] = problem.negated;
    out["status"] = verdict_json(r.verdict);
    out["method"] = r.method;
    out["estimated"] = r.estimated;
    if (r.estimated) {
      const nc::EstimateReport& e = r.estimate;
      out["numerator"] = nc::decimal(e.numerator);
      out["denominator"] = std::to_string(e.denominator);
      out["decimal"] = rational_decimal(e.numerator, e.denominator);
      out["epsilon"] = e.epsilon;
      out["delta"] = e.delta;
      out["seed"] = e.seed;
      out["samples"] = e.samples;
      out["witnesses"] = e.witness_count;
      out["exact"] = e.exact;
    } else {
      out["count"] = nc::decimal(r.count);
    }
    std::cout << out.dump(2) << "\n";
    return;
  }

  std::cout << "setting: " << setting_text(r.setting) << "\n";
  std::cout << "problem: " << (problem.negated ? "negated " : "")
            << problem_name(problem.kind) << "\n";
  std::cout << "status: " << verdict_line(r.verdict) << "\n";
  std::cout << "method: " << r.method << "\n";
  if (!r.estimated) {
    std::cout << "count: " << nc::decimal(r.count) << "\n";
    return;
  }
  const nc::EstimateReport& e = r.estimate;
  if (e.exact) {
    std::cout << "count: " << nc::decimal(e.numerator)
              << " (exact: the witnesses collapsed)\n";
  } else {
    std::cout << "estimate: " << nc::decimal(e.numerator) << " / "
              << e.denominator << " = "
              << rational_decimal(e.numerator, e.denominator) << "\n";
  }
  std::cout << "witnesses: " << e.witness_count << "\n";
  std::cout << "samples: " << e.samples << " (epsilon " << e.epsilon
            << ", delta " << e.delta << ", seed " << e.seed << ")\n";
}

// -------------------------------------------------------- check-completion

struct CheckArgs {
  std::string db_file;
  std::string facts_file;
  bool json_out = false;
};

void run_check(const CheckArgs& a) {
  nc::IncompleteDatabase db = nc::load_database(a.db_file);
  nc::GroundDatabase s = nc::load_ground(a.facts_file);
  bool yes = nc::is_completion(db, s);
  if (a.json_out) {
    json out;
    out["completion"] = yes;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "completion: " << (yes ? "yes" : "no") << "\n";
  }
}

// ------------------------------------------------------------------ gadget

struct GadgetArgs {
  std::string name;
  std::string graph_file;
  std::string cnf_file;
  int k = 0;
  std::string out_file;
  bool verify = false;
  int jobs = 0;
  std::uint64_t brute_cap = 0;
  bool json_out = false;
};

nc::GadgetOutput build_gadget(const GadgetArgs& a, const nc::Caps& caps) {
  auto graph = [&]() {
    if (a.graph_file.empty()) {
      nc::fail(nc::errc::domain, "gadget " + a.name + " needs --graph");
    }
    return nc::Graph::load(a.graph_file);
  };
  if (a.name == "3col") return nc::gadget_3col(graph(), caps);
  if (a.name == "is-val-rst") {
    return nc::gadget_is_val(graph(), nc::IsValVariant::rst, caps);
  }
  if (a.name == "is-val-rxy-sxy") {
    return nc::gadget_is_val(graph(), nc::IsValVariant::rxy_sxy, caps);
  }
  if (a.name == "vc") return nc::gadget_vc(graph(), caps);
  if (a.name == "is-comp") return nc::gadget_is_comp(graph(), caps);
  if (a.name == "pf") return nc::gadget_pf(graph(), caps);
  if (a.name == "3col-comp") return nc::gadget_3col_comp(graph(), caps);
  if (a.name == "k3sat") {
    if (a.cnf_file.empty()) {
      nc::fail(nc::errc::domain, "gadget k3sat needs --cnf");
    }
    if (a.k < 1) nc::fail(nc::errc::domain, "gadget k3sat needs --k");
    return nc::gadget_k3sat(nc::Cnf3::load(a.cnf_file), a.k, caps);
  }
  nc::fail(nc::errc::domain,
           "unknown gadget " + a.name +
               " (3col, is-val-rst, is-val-rxy-sxy, vc, is-comp, pf, "
               "3col-comp, k3sat)");
}

void run_gadget(const GadgetArgs& a) {
  nc::Caps caps = nc::default_caps();
  caps.jobs = a.jobs > 0 ? a.jobs : default_jobs();
  if (a.brute_cap > 0) caps.brute_valuations = a.brute_cap;

  nc::GadgetOutput g = build_gadget(a, caps);
  std::string text = nc::serialize_database(g.db);

  bool verified = false;
  nc::BigCount lhs;
  if (a.verify) verified = nc::verify_identity(g, caps, &lhs);

  if (!a.out_file.empty()) {
    std::ofstream out(a.out_file);
    if (!out) nc::fail(nc::errc::resource, "cannot write " + a.out_file);
    out << text;
  }

  if (a.json_out) {
    json out;
    out["gadget"] = a.name;
    out["identity"] = g.identity;
    out["query"] = nc::to_text(g.query);
    out["problem"] = problem_name(g.problem.kind);
    out["negated"] = g.problem.negated;
    out["reference"] = nc::decimal(g.reference);
    if (a.verify) {
      out["count"] = nc::decimal(lhs);
      out["verified"] = verified;
    }
    if (a.out_file.empty()) out["database"] = text;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "identity: " << g.identity << "\n";
    std::cout << "query: " << nc::to_text(g.query) << "\n";
    std::cout << "problem: " << (g.problem.negated ? "negated " : "")
              << problem_name(g.problem.kind) << "\n";
    std::cout << "reference: " << nc::decimal(g.reference) << "\n";
    if (a.verify) {
      std::cout << "count: " << nc::decimal(lhs) << "\n";
      std::cout << "verified: " << (verified ? "yes" : "no") << "\n";
    }
    if (a.out_file.empty()) {
      std::cout << "database:\n" << text;
    }
  }

  if (a.verify && !verified) {
    nc::fail(nc::errc::verification,
             "gadget count " + nc::decimal(lhs) +
                 " does not match the reference " + nc::decimal(g.reference));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting valuations and completions of incomplete databases"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  CLI::App* classify =
      app.add_subcommand("classify", "decide the counting complexity");
  add_query_options(classify, ca.query);
  classify->add_option("--db", ca.db_file,
                       "database file; its shape fixes the setting");
  add_setting_options(classify, ca.setting);
  classify->add_option("--problem", ca.problem, "val or comp");
  classify->add_flag("--negated", ca.negated, "count the non-satisfying side");
  classify->add_flag("--json", ca.json_out, "machine-readable output");
  classify->callback([&ca]() { run_classify(ca); });

  CountArgs na;
  CLI::App* count =
      app.add_subcommand("count", "count valuations or completions");
  count->add_option("--db", na.db_file, "database file")->required();
  add_query_options(count, na.query);
  count->add_option("--problem", na.problem, "val or comp");
  count->add_flag("--negated", na.negated, "count the non-satisfying side");
  count->add_option("--mode", na.mode, "auto, exact, brute, or approx");
  count->add_option("--epsilon", na.epsilon, "relative error bound");
  count->add_option("--delta", na.delta, "failure probability");
  count->add_option("--seed", na.seed, "estimator seed");
  count->add_option("--jobs", na.jobs, "worker threads (or NULLCOUNT_JOBS)");
  count->add_option("--brute-cap", na.brute_cap,
                    "valuation budget for brute force");
  add_setting_options(count, na.setting);
  count->add_flag("--json", na.json_out, "machine-readable output");
  count->callback([&na]() { run_count(na); });

  CheckArgs ka;
  CLI::App* check = app.add_subcommand(
      "check-completion", "test whether a ground database completes another");
  check->add_option("--db", ka.db_file, "incomplete database file")
      ->required();
  check->add_option("--facts", ka.facts_file, "ground database file")
      ->required();
  check->add_flag("--json", ka.json_out, "machine-readable output");
  check->callback([&ka]() { run_check(ka); });

  GadgetArgs ga;
  CLI::App* gadget =
      app.add_subcommand("gadget", "build a hardness reduction instance");
  gadget->add_option("name", ga.name, "which reduction")->required();
  gadget->add_option("--graph", ga.graph_file, "graph file");
  gadget->add_option("--cnf", ga.cnf_file, "3-CNF file");
  gadget->add_option("--k", ga.k, "prefix length for k3sat");
  gadget->add_option("--out", ga.out_file, "write the database here");
  gadget->add_flag("--verify", ga.verify,
                   "recount by brute force and compare");
  gadget->add_option("--jobs", ga.jobs, "worker threads (or NULLCOUNT_JOBS)");
  gadget->add_option("--brute-cap", ga.brute_cap,
                     "valuation budget for --verify");
  gadget->add_flag("--json", ga.json_out, "machine-readable output");
  gadget->callback([&ga]() { run_gadget(ga); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const nc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
