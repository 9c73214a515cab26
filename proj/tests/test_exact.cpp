#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "nullcount/classify.h"
#include "nullcount/errors.h"
#include "nullcount/exact.h"
#include "nullcount/model.h"
#include "nullcount/oracle.h"
#include "nullcount/query.h"
#include "support.h"

using namespace nullcount;
using testsupport::Instance;
using testsupport::RNG;

namespace {

UnionQuery wrap(const ConjunctiveQuery& q) {
  UnionQuery u;
  u.disjuncts.push_back(q);
  return u;
}

bool is_error(const std::function<void()>& f, errc kind) {
  try {
    f();
  } catch (const error& e) {
    return e.kind() == kind;
  }
  return false;
}

constexpr Problem kVal{ProblemKind::valuations, false};
constexpr Problem kComp{ProblemKind::completions, false};

}  // namespace

TEST_CASE("codd per-atom counter on the running example") {
  IncompleteDatabase db = parse_database(
      "dom ?1 : a b c\n"
      "dom ?2 : a b\n"
      "S(a, b)\nS(?1, a)\nS(a, ?2)\n");
  ConjunctiveQuery q = parse_cq("S(X, X)");
  CHECK(count_val_codd(db, q) == 4);
  CHECK(brute_count_valuations(db, wrap(q)) == 4);
}

TEST_CASE("star counter on small stars") {
  ConjunctiveQuery q = parse_cq("R(X, Y), S(X)");
  IncompleteDatabase all_null =
      parse_database("@uniform a b\nR(?1, ?2)\nS(?3)\n");
  CHECK(count_val_uniform_codd(all_null, q) == 4);
  IncompleteDatabase half = parse_database("@uniform a b\nR(a, ?2)\nS(?3)\n");
  CHECK(count_val_uniform_codd(half, q) == 2);
}

TEST_CASE("uniform counters agree on two unary atoms") {
  ConjunctiveQuery q = parse_cq("R(X), S(X)");
  IncompleteDatabase fresh = parse_database("@uniform a b\nR(?1)\nS(?2)\n");
  CHECK(count_val_uniform_codd(fresh, q) == 2);
  CHECK(count_val_uniform_naive(fresh, q) == 2);
  IncompleteDatabase shared = parse_database("@uniform a b\nR(?1)\nS(?1)\n");
  CHECK(count_val_uniform_naive(shared, q) == 2);
  CHECK(brute_count_valuations(shared, wrap(q)) == 2);
}

TEST_CASE("unary completion counter") {
  IncompleteDatabase db = parse_database("@uniform c1 a\nR(c1)\nS(?1)\n");
  ConjunctiveQuery q = parse_cq("R(X), S(Y)");
  CHECK(count_comp_uniform_unary(db, q) == 2);
  CHECK(brute_count_completions(db, wrap(q)) == 2);
  CHECK(count_comp_uniform_unary(db, q, true) == 0);
}

TEST_CASE("ground databases take the evaluation shortcut") {
  IncompleteDatabase db = parse_database("R(a)\nS(b)\n");
  CHECK(count_val_disjoint(db, parse_cq("R(X), S(Y)")) == 1);
  CHECK(count_val_disjoint(db, parse_cq("T(X)")) == 0);
  CHECK(count_val_codd(db, parse_cq("R(a)")) == 1);
}

TEST_CASE("absent or mismatched relations match nothing") {
  IncompleteDatabase db = parse_database("dom ?1 : a b\nR(a, b)\nS(?1)\n");
  // R is binary in the database but unary in the query.
  CHECK(count_val_disjoint(db, parse_cq("R(X), S(Y)")) == 0);
  CHECK(brute_count_valuations(db, parse_query("R(X), S(Y)")) == 0);
  // T does not exist.
  CHECK(count_val_disjoint(db, parse_cq("S(X), T(Y)")) == 0);

  // An empty relation kills the product too.
  IncompleteDatabase empty_side =
      parse_database("dom ?1 : a b\nR(?1, a)\n");
  CHECK(count_val_disjoint(empty_side, parse_cq("R(X, Y), S(Z)")) == 0);
}

TEST_CASE("setting preconditions") {
  IncompleteDatabase naive = parse_database("@uniform a b\nR(?1)\nS(?1)\n");
  CHECK(is_error([&] { count_val_codd(naive, parse_cq("R(X)")); },
                 errc::setting));
  IncompleteDatabase per_null = parse_database(
      "dom ?1 : a\ndom ?2 : a b\nR(?1)\nS(?2)\n");
  CHECK(is_error(
      [&] { count_val_uniform_naive(per_null, parse_cq("R(X), S(X)")); },
      errc::setting));
  CHECK(is_error(
      [&] { count_val_uniform_codd(per_null, parse_cq("R(X), S(X)")); },
      errc::setting));
  CHECK(is_error(
      [&] { count_comp_uniform_unary(per_null, parse_cq("R(X)")); },
      errc::setting));
}

TEST_CASE("algorithm preconditions") {
  IncompleteDatabase db = parse_database("@uniform a b\nR(?1)\nS(?2)\n");
  // Shared variable: outside the product class.
  CHECK(is_error([&] { count_val_disjoint(db, parse_cq("R(X), S(X)")); },
                 errc::capability));
  // Repeated variable: outside the uniform naive class.
  IncompleteDatabase wide = parse_database("@uniform a b\nR(?1, ?2)\n");
  CHECK(is_error([&] { count_val_uniform_naive(wide, parse_cq("R(X, X)")); },
                 errc::capability));
  // Free variables are never countable directly.
  CHECK(is_error([&] { count_val_disjoint(db, parse_cq("q(X) := R(X)")); },
                 errc::capability));

  // Too many constant atoms for the DP cap.
  std::string text = "@uniform a b\n";
  ConjunctiveQuery many;
  for (int i = 0; i < 7; ++i) {
    std::string rel = "R" + std::to_string(i);
    text += rel + "(?" + std::to_string(i) + ")\n";
    many.atoms.push_back({rel, {{"a", false}}});
  }
  IncompleteDatabase db7 = parse_database(text);
  CHECK(is_error([&] { count_val_constants_dp(db7, many); },
                 errc::capability));

  // The completion counter rejects database relations the query lacks.
  IncompleteDatabase extra = parse_database("@uniform a b\nR(?1)\nT(?2)\n");
  CHECK(is_error([&] { count_comp_uniform_unary(extra, parse_cq("R(X)")); },
                 errc::capability));
}

TEST_CASE("product and constants dp match brute force") {
  RNG rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst = testsupport::small_instance(rng, testsupport::gen_disjoint);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    ExactVerdict v = classify_exact(
        inst.q, {TableKind::naive, DomainKind::non_uniform}, kVal);
    REQUIRE(v.status == ExactStatus::tractable);
    CHECK(v.algorithm == (inst.q.has_constants() ? "constants-dp"
                                                 : "product"));
    CHECK(count_val_disjoint(inst.db, inst.q) ==
          brute_count_valuations(inst.db, wrap(inst.q)));
  }
}

TEST_CASE("unary constant queries match brute force") {
  RNG rng(102);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst =
        testsupport::small_instance(rng, testsupport::gen_constants_dp);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    BigCount expect = brute_count_valuations(inst.db, wrap(inst.q));
    CHECK(count_val_constants_dp(inst.db, inst.q) == expect);
    CHECK(count_val_disjoint(inst.db, inst.q) == expect);
  }
}

TEST_CASE("codd per-atom counter matches brute force") {
  RNG rng(103);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst = testsupport::small_instance(rng, testsupport::gen_codd);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    ExactVerdict v = classify_exact(
        inst.q, {TableKind::codd, DomainKind::non_uniform}, kVal);
    REQUIRE(v.status == ExactStatus::tractable);
    REQUIRE(v.algorithm == "codd-per-atom");
    CHECK(count_val_codd(inst.db, inst.q) ==
          brute_count_valuations(inst.db, wrap(inst.q)));
  }
}

TEST_CASE("uniform inclusion-exclusion matches brute force") {
  RNG rng(104);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst =
        testsupport::small_instance(rng, testsupport::gen_uniform_naive);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    ExactVerdict v = classify_exact(
        inst.q, {TableKind::naive, DomainKind::uniform}, kVal);
    REQUIRE(v.status == ExactStatus::tractable);
    REQUIRE(v.algorithm == "uniform-naive-ie");
    CHECK(count_val_uniform_naive(inst.db, inst.q) ==
          brute_count_valuations(inst.db, wrap(inst.q)));
  }
}

TEST_CASE("uniform star counter matches brute force") {
  RNG rng(105);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst =
        testsupport::small_instance(rng, testsupport::gen_uniform_codd);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    ExactVerdict v = classify_exact(
        inst.q, {TableKind::codd, DomainKind::uniform}, kVal);
    REQUIRE(v.status == ExactStatus::tractable);
    REQUIRE(v.algorithm == "uniform-codd-star");
    CHECK(count_val_uniform_codd(inst.db, inst.q) ==
          brute_count_valuations(inst.db, wrap(inst.q)));
  }
}

TEST_CASE("unary completion counter matches brute force") {
  RNG rng(106);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst =
        testsupport::small_instance(rng, testsupport::gen_uniform_comp);
    INFO(serialize_database(inst.db));
    INFO(to_text(inst.q));
    INFO((inst.negated ? "negated" : "positive"));
    ExactVerdict v = classify_exact(
        inst.q, {TableKind::naive, DomainKind::uniform}, kComp);
    REQUIRE(v.status == ExactStatus::tractable);
    REQUIRE(v.algorithm == "uniform-unary-comp");
    CHECK(count_comp_uniform_unary(inst.db, inst.q, inst.negated) ==
          brute_count_completions(inst.db, wrap(inst.q), inst.negated));
  }
}
