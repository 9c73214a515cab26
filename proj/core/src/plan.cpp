#include <string>

#include "nullcount/errors.h"
#include "nullcount/exact.h"
#include "nullcount/oracle.h"
#include "nullcount/plan.h"

namespace nullcount {

Setting infer_setting(const IncompleteDatabase& db) {
  return {db.codd() ? TableKind::codd : TableKind::naive,
          db.uniform() ? DomainKind::uniform : DomainKind::non_uniform};
}

Setting resolve_setting(const IncompleteDatabase& db,
                        std::optional<TableKind> table,
                        std::optional<DomainKind> domain) {
  Setting s = infer_setting(db);
  if (table) {
    if (*table == TableKind::codd && !db.codd()) {
      fail(errc::setting, "database is not a Codd table: a null repeats");
    }
    s.table = *table;
  }
  if (domain) {
    if (*domain == DomainKind::uniform && !db.uniform()) {
      fail(errc::setting, "database is not uniform: null domains differ");
    }
    s.domain = *domain;
  }
  return s;
}

namespace {

std::string verdict_label(const ExactVerdict& v) {
  std::string s = exact_status_name(v.status);
  if (!v.explanation.empty()) s += ": " + v.explanation;
  return s;
}

}  // namespace

PlanResult plan_and_count(const IncompleteDatabase& db, const UnionQuery& q,
                          Problem problem, const PlanParams& params) {
  if (q.disjuncts.empty()) fail(errc::domain, "empty union");
  for (const ConjunctiveQuery& cq : q.disjuncts) {
    if (cq.atoms.empty()) fail(errc::domain, "query needs at least one atom");
    if (!cq.boolean()) {
      fail(errc::capability,
           "counting needs a Boolean query; classification handles free "
           "variables");
    }
  }

  PlanResult r;
  r.setting = resolve_setting(db, params.table, params.domain);

  bool classifiable = q.single() && q.only().self_join_free();
  if (classifiable) {
    r.verdict = classify_exact(q.only(), r.setting, problem);
  } else {
    r.verdict.status = ExactStatus::unknown;
    r.verdict.explanation =
        "the dichotomy covers single self-join-free conjunctive queries";
  }

  // No nulls: the one valuation decides, whatever the mode asked for.
  if (db.nulls().empty()) {
    bool sat = eval(q, apply_valuation(db, {}));
    r.method = "ground";
    r.count = sat != problem.negated ? 1 : 0;
    return r;
  }

  auto run_brute = [&]() {
    return problem.kind == ProblemKind::valuations
               ? brute_count_valuations(db, q, problem.negated, params.caps)
               : brute_count_completions(db, q, problem.negated, params.caps);
  };
  auto run_estimate = [&]() {
    return estimate_valuations(db, q, params.epsilon, params.delta,
                               params.seed, params.caps);
  };
  auto dispatch = [&]() -> BigCount {
    const ConjunctiveQuery& cq = q.only();
    const std::string& a = r.verdict.algorithm;
    if (problem.kind == ProblemKind::completions) {
      if (a != "uniform-unary-comp") {
        fail(errc::verification,
             "tractable completion verdict names unexpected algorithm " + a);
      }
      return count_comp_uniform_unary(db, cq, problem.negated, params.caps);
    }
    BigCount positive;
    if (a == "product" || a == "constants-dp") {
      positive = count_val_disjoint(db, cq, params.caps);
    } else if (a == "codd-per-atom") {
      positive = count_val_codd(db, cq);
    } else if (a == "uniform-naive-ie") {
      positive = count_val_uniform_naive(db, cq, params.caps);
    } else if (a == "uniform-codd-star") {
      positive = count_val_uniform_codd(db, cq, params.caps);
    } else {
      fail(errc::verification, "tractable verdict names unknown algorithm " +
                                   (a.empty() ? "(none)" : a));
    }
    return problem.negated ? total_valuations(db) - positive : positive;
  };

  bool tractable = classifiable && r.verdict.status == ExactStatus::tractable;

  switch (params.mode) {
    case CountMode::exact:
      if (!tractable) {
        fail(errc::capability, "no exact polynomial algorithm applies (" +
                                   verdict_label(r.verdict) + ")");
      }
      r.method = r.verdict.algorithm;
      r.count = dispatch();
      return r;

    case CountMode::brute:
      r.method = "brute-force";
      r.count = run_brute();
      return r;

    case CountMode::approx:
      if (problem.kind != ProblemKind::valuations || problem.negated) {
        fail(errc::capability,
             "the estimator covers satisfying-valuation counts only");
      }
      r.method = "karp-luby";
      r.estimated = true;
      r.estimate = run_estimate();
      return r;

    case CountMode::automatic:
      break;
  }

  if (tractable) {
    // Instance-level limits (component size, block signatures, relation
    // budget) can still reject; those fall through to the generic paths.
    try {
      r.method = r.verdict.algorithm;
      r.count = dispatch();
      return r;
    } catch (const error& e) {
      if (e.kind() != errc::capability && e.kind() != errc::resource) throw;
    }
  }
  if (problem.kind == ProblemKind::valuations && !problem.negated) {
    r.method = "karp-luby";
    r.estimated = true;
    r.estimate = run_estimate();
    return r;
  }
  r.method = "brute-force";
  try {
    r.count = run_brute();
  } catch (const error& e) {
    if (e.kind() == errc::resource) {
      fail(errc::resource, std::string(e.what()) +
                               " (exact status: " + verdict_label(r.verdict) +
                               ")");
    }
    throw;
  }
  return r;
}

}  // namespace nullcount
