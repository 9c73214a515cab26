#include "nullcount/classify.h"

#include <algorithm>

#include "nullcount/errors.h"

namespace nullcount {

const char* exact_status_name(ExactStatus s) {
  switch (s) {
    case ExactStatus::tractable:
      return "tractable";
    case ExactStatus::sharp_p_complete:
      return "#P-complete";
    case ExactStatus::sharp_p_hard:
      return "#P-hard";
    case ExactStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

const char* approx_status_name(ApproxStatus s) {
  switch (s) {
    case ApproxStatus::fpras:
      return "fpras";
    case ApproxStatus::no_fpras_unless_np_eq_rp:
      return "no-fpras-unless-np-eq-rp";
    case ApproxStatus::open:
      return "open";
  }
  return "open";
}

static void require_sjfbcq(const ConjunctiveQuery& q) {
  if (q.atoms.empty()) fail(errc::domain, "query needs at least one atom");
  if (!q.boolean()) {
    fail(errc::capability,
         "query has free variables; classify each substitution class");
  }
  if (!q.self_join_free()) {
    fail(errc::capability, "query has a self-join");
  }
}

static ExactVerdict tractable(std::string algorithm, std::string why) {
  ExactVerdict v;
  v.status = ExactStatus::tractable;
  v.algorithm = std::move(algorithm);
  v.explanation = std::move(why);
  return v;
}

static ExactVerdict hard(ExactStatus status,
                         std::vector<std::string> witnesses,
                         std::string why) {
  ExactVerdict v;
  v.status = status;
  v.witnesses = std::move(witnesses);
  v.explanation = std::move(why);
  return v;
}

static ExactVerdict unknown(std::string why) {
  ExactVerdict v;
  v.status = ExactStatus::unknown;
  v.explanation = std::move(why);
  return v;
}

ExactVerdict classify_exact(const ConjunctiveQuery& q, Setting setting,
                            Problem problem) {
  require_sjfbcq(q);
  CanonicalPatternReport r = canonical_patterns(q);

  if (problem.kind == ProblemKind::completions) {
    if (setting.domain == DomainKind::non_uniform) {
      return hard(setting.table == TableKind::codd
                      ? ExactStatus::sharp_p_complete
                      : ExactStatus::sharp_p_hard,
                  {},
                  "counting completions over per-null domains is hard for "
                  "every query");
    }
    bool wide = std::any_of(q.atoms.begin(), q.atoms.end(), [](const Atom& a) {
      return a.args.size() >= 2;
    });
    if (wide) {
      std::vector<std::string> w;
      if (r.Rxx) w.push_back("R(X, X)");
      if (r.Rxy) w.push_back("R(X, Y)");
      if (r.atom_with_constant_and_arity_ge2) w.push_back("R(c, X)");
      if (r.Rcc || r.Rcc_distinct) w.push_back("R(c, d)");
      return hard(setting.table == TableKind::codd
                      ? ExactStatus::sharp_p_complete
                      : ExactStatus::sharp_p_hard,
                  std::move(w),
                  "an atom of arity at least two makes uniform completion "
                  "counting hard");
    }
    return tractable("uniform-unary-comp",
                     "all atoms unary over a shared domain");
  }

  // Valuations.
  if (setting.domain == DomainKind::non_uniform) {
    if (setting.table == TableKind::codd) {
      if (r.RxSx) {
        return hard(ExactStatus::sharp_p_complete, {"R(X), S(X)"},
                    "a variable shared between atoms is hard for Codd "
                    "tables");
      }
      return tractable("codd-per-atom",
                       "atoms touch pairwise disjoint variables");
    }
    std::vector<std::string> w;
    if (r.Rxx) w.push_back("R(X, X)");
    if (r.RxSx) w.push_back("R(X), S(X)");
    if (r.Rcc) w.push_back("R(c, c)");
    if (r.Rcc_distinct) w.push_back("R(c, d)");
    if (!w.empty()) {
      return hard(ExactStatus::sharp_p_complete, std::move(w),
                  "a repeated variable, shared variable, or two-constant "
                  "atom is hard for naive tables");
    }
    return tractable(q.has_constants() ? "constants-dp" : "product",
                     "independent atoms factorize over the facts");
  }

  // Uniform domain.
  if (q.has_constants()) {
    return unknown(
        "constants under a uniform domain are not settled for valuation "
        "counting");
  }
  if (setting.table == TableKind::naive && r.Rxx) {
    return hard(ExactStatus::sharp_p_complete, {"R(X, X)"},
                "a repeated variable is hard for uniform naive tables");
  }
  {
    std::vector<std::string> w;
    if (r.RxSxyTy) w.push_back("R(X), S(X, Y), T(Y)");
    if (r.RxySxy) w.push_back("R(X, Y), S(X, Y)");
    if (!w.empty()) {
      return hard(ExactStatus::sharp_p_complete, std::move(w),
                  "two shared variables touching one atom are hard under a "
                  "uniform domain");
    }
  }
  if (setting.table == TableKind::codd) {
    return tractable("uniform-codd-star",
                     "components share a single variable");
  }
  return tractable("uniform-naive-ie",
                   "inclusion-exclusion over violated unary singletons");
}

ApproxVerdict classify_approx(const UnionQuery& q, Setting setting,
                              Problem problem) {
  if (q.disjuncts.empty()) fail(errc::domain, "empty union");
  for (const ConjunctiveQuery& cq : q.disjuncts) {
    if (cq.atoms.empty()) fail(errc::domain, "query needs at least one atom");
  }
  ApproxVerdict v;
  bool all_unary = std::all_of(
      q.disjuncts.begin(), q.disjuncts.end(),
      [](const ConjunctiveQuery& cq) { return cq.all_atoms_unary(); });

  if (problem.kind == ProblemKind::valuations) {
    if (problem.negated) {
      v.status = ApproxStatus::open;
      v.explanation =
          "complement counts do not inherit the union sampler's relative "
          "error";
      return v;
    }
    v.status = ApproxStatus::fpras;
    v.explanation = "union-of-cylinders sampling estimates the count";
    return v;
  }

  // Completions. Exactly solvable cells stay fpras even negated; sampling
  // and hardness arguments are only claimed for the positive problem.
  if (setting.domain == DomainKind::uniform && all_unary &&
      q.disjuncts.size() == 1 && q.only().self_join_free()) {
    v.status = ApproxStatus::fpras;
    v.explanation = "the exact unary completion count already runs in "
                    "polynomial time";
    return v;
  }
  if (problem.negated) {
    v.status = ApproxStatus::open;
    v.explanation = "no scheme or refutation is recorded for complement "
                    "completion counts";
    return v;
  }
  if (setting.domain == DomainKind::non_uniform) {
    v.status = ApproxStatus::no_fpras_unless_np_eq_rp;
    v.explanation =
        "per-null domains embed vertex-cover counting with zero-count "
        "instances";
    return v;
  }
  if (all_unary) {
    v.status = ApproxStatus::fpras;
    v.explanation = "unary completion counting is exactly solvable";
    return v;
  }
  if (setting.table == TableKind::naive) {
    v.status = ApproxStatus::no_fpras_unless_np_eq_rp;
    v.explanation =
        "a binary atom separates 3-colorable graphs by a constant-factor "
        "gap";
    return v;
  }
  v.status = ApproxStatus::open;
  v.explanation =
      "uniform Codd completion counting beyond unary atoms is open";
  return v;
}

ParametricVerdict classify_parametric(const ConjunctiveQuery& q,
                                      Setting setting, Problem problem) {
  if (q.atoms.empty()) fail(errc::domain, "query needs at least one atom");
  if (!q.self_join_free()) fail(errc::capability, "query has a self-join");
  ParametricVerdict out;
  bool all_tractable = true;
  bool any_hard = false;
  bool all_hard_complete = true;
  bool any_unknown = false;
  for (const auto& assignment : free_var_classes(q)) {
    ConjunctiveQuery grounded = substitute_free(q, assignment);
    ExactVerdict v = classify_exact(grounded, setting, problem);
    switch (v.status) {
      case ExactStatus::tractable:
        break;
      case ExactStatus::sharp_p_complete:
        any_hard = true;
        all_tractable = false;
        break;
      case ExactStatus::sharp_p_hard:
        any_hard = true;
        all_tractable = false;
        all_hard_complete = false;
        break;
      case ExactStatus::unknown:
        any_unknown = true;
        all_tractable = false;
        break;
    }
    out.classes.emplace_back(assignment, std::move(v));
  }
  if (any_hard) {
    out.overall = (all_hard_complete && !any_unknown)
                      ? ExactStatus::sharp_p_complete
                      : ExactStatus::sharp_p_hard;
  } else if (all_tractable) {
    out.overall = ExactStatus::tractable;
  } else {
    out.overall = ExactStatus::unknown;
  }
  return out;
}

}  // namespace nullcount
