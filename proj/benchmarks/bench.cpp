// Microbenchmarks for the counting paths. Each one scales a single knob so
// regressions in the polynomial algorithms stand out against the
// exponential baselines.

#include <benchmark/benchmark.h>

#include <string>

#include "nullcount/approx.h"
#include "nullcount/compsem.h"
#include "nullcount/exact.h"
#include "nullcount/model.h"
#include "nullcount/oracle.h"
#include "nullcount/query.h"

namespace {

using namespace nullcount;

UnionQuery wrap(const ConjunctiveQuery& q) {
  UnionQuery u;
  u.disjuncts.push_back(q);
  return u;
}

// Codd table with one null per fact, counted per atom. Scales fact count.
void BM_CoddPerAtom(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) {
    std::string n = std::to_string(i);
    text += "dom ?a" + n + " : c0 c1 c2 c3\n";
    text += "R(?a" + n + ", c" + std::to_string(i % 4) + ")\n";
  }
  IncompleteDatabase db = parse_database(text);
  ConjunctiveQuery q = parse_cq("R(X, X)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_val_codd(db, q));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoddPerAtom)->RangeMultiplier(4)->Range(8, 512)->Complexity();

// Inclusion-exclusion over null blocks of a uniform naive table. Scales the
// null count at a fixed block structure.
void BM_UniformNaiveIE(benchmark::State& state) {
  std::string text = "@uniform c0 c1 c2 c3\nS(c0)\n";
  for (int i = 0; i < state.range(0); ++i) {
    text += "R(?r" + std::to_string(i) + ")\n";
    text += "S(?s" + std::to_string(i) + ")\n";
  }
  IncompleteDatabase db = parse_database(text);
  ConjunctiveQuery q = parse_cq("R(X), S(X)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_val_uniform_naive(db, q));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UniformNaiveIE)->RangeMultiplier(4)->Range(4, 64)->Complexity();

// Star dynamic program on a uniform Codd table. Scales the domain size.
void BM_StarDP(benchmark::State& state) {
  std::string text = "@uniform";
  for (int i = 0; i < state.range(0); ++i) {
    text += " v" + std::to_string(i);
  }
  text += "\nR(?a, ?b)\nR(v0, ?c)\nS(?d)\nS(v1)\n";
  IncompleteDatabase db = parse_database(text);
  ConjunctiveQuery q = parse_cq("R(X, Y), S(X)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_val_uniform_codd(db, q));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StarDP)->RangeMultiplier(4)->Range(4, 256)->Complexity();

// Sampling estimator on a join with a moderate witness set.
void BM_KarpLuby(benchmark::State& state) {
  std::string text = "@uniform c0 c1 c2 c3\nS(c0)\n";
  for (int i = 0; i < state.range(0); ++i) {
    text += "R(?r" + std::to_string(i) + ")\n";
  }
  text += "S(?s0)\nS(?s1)\n";
  IncompleteDatabase db = parse_database(text);
  UnionQuery q = wrap(parse_cq("R(X), S(X)"));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_valuations(db, q, 0.2, 0.25, seed++));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KarpLuby)->RangeMultiplier(2)->Range(4, 16)->Complexity();

// Completion membership via bipartite matching, every null compatible with
// every supplied fact. Scales the side size.
void BM_Matching(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::string text;
  std::vector<Fact> facts;
  for (int i = 0; i < n; ++i) {
    std::string name = "a" + std::to_string(i);
    text += "dom ?e" + std::to_string(i) + " :";
    for (int j = 0; j < n; ++j) text += " a" + std::to_string(j);
    text += "\nR(?e" + std::to_string(i) + ")\n";
    facts.push_back({"R", {constant(name)}});
  }
  IncompleteDatabase db = parse_database(text);
  GroundDatabase target = GroundDatabase::from_facts(facts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_completion_codd(db, target));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Matching)->RangeMultiplier(2)->Range(4, 64)->Complexity();

// Exhaustive engine over a 2^16 valuation space, the fallback everything
// else is measured against.
void BM_BruteEngine(benchmark::State& state) {
  std::string text = "@uniform c0 c1\nS(c0)\n";
  for (int i = 0; i < 16; ++i) {
    text += "R(?r" + std::to_string(i) + ")\n";
  }
  IncompleteDatabase db = parse_database(text);
  UnionQuery q = wrap(parse_cq("R(X), S(X)"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_count_valuations(db, q));
  }
}
BENCHMARK(BM_BruteEngine);

}  // namespace

BENCHMARK_MAIN();
