#include <doctest.h>

#include <algorithm>

#include "optplan/analysis.hpp"
#include "optplan/evaluator.hpp"
#include "optplan/oracle.hpp"
#include "optplan/query.hpp"
#include "optplan/rewrite.hpp"
#include "testkit.hpp"

using namespace optplan;
namespace tk = optplan::testkit;

namespace {

Term foaf(const std::string& local) { return Term::iri(tk::vocab::kFoaf + local); }

Query query_of(const Pattern& p) { return Query{std::nullopt, p, {}}; }

// Expected stack depth after each node in post-order: leaves push one, OPT pops two and pushes one.
void expected_depths(const PlanTree& t, std::size_t& depth, std::vector<std::size_t>& out) {
  if (t.is_leaf()) {
    out.push_back(++depth);
    return;
  }
  expected_depths(t.left(), depth, out);
  expected_depths(t.right(), depth, out);
  out.push_back(--depth);
}

}  // namespace

TEST_CASE("bloggers examples") {
  Graph g = tk::bloggers();
  ReferenceEngine engine;
  Variable u("u"), v("v"), x("x"), y("y"), z("z");

  SolutionSet q = run_query(query_of(tk::bloggers_join()), g, engine).solutions;
  CHECK(q == SolutionSet{Mapping{{u, Term::literal("Jon Foobar")}, {x, tk::blog_rdf()}, {y, tk::id1()}, {z, tk::id1()}}});

  SolutionSet q1 = run_query(query_of(tk::bloggers_optional()), g, engine).solutions;
  CHECK(q1 == SolutionSet{Mapping{{u, Term::literal("Jon Foobar")}, {v, foaf("Agent")}, {x, tk::blog_rdf()},
                                  {y, tk::id1()}, {z, tk::id1()}}});

  CHECK_THROWS_AS(run_query(query_of(tk::bloggers_crossing()), g, engine), NotWellDesigned);
  EvalReport fallback = run_query(query_of(tk::bloggers_crossing()), g, engine, EvalMode::OracleFallback);
  CHECK(fallback.used_oracle);
  CHECK(fallback.solutions.empty());
  CHECK_FALSE(fallback.plan.has_value());
}

TEST_CASE("projection keeps only the selected variables") {
  Query q = parse_query(tk::read_fixture("bloggers_optional.rq"));
  q.projection = std::vector<Variable>{Variable("v"), Variable("absent")};
  EvalReport r = run_query(q, tk::bloggers(), ReferenceEngine{});
  CHECK(r.solutions == SolutionSet{Mapping{{Variable("v"), foaf("Agent")}}});
  CHECK(r.root_count == 1);
}

TEST_CASE("report follows the stack discipline") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed;
    Pattern p = tk::gen_well_designed(cfg);
    Graph g = tk::gen_graph({.seed = seed});
    PlanTree t = to_plan_tree(p);
    EvalReport r = evaluate_with_report(t, g, ReferenceEngine{});

    std::size_t depth = 0;
    std::vector<std::size_t> expected;
    expected_depths(t, depth, expected);
    CHECK(r.stack_depths == expected);
    CHECK(r.stack_depths.back() == 1);
    CHECK(r.per_leaf_counts.size() == t.leaf_count());
    CHECK(r.per_join_counts.size() == t.inner_count());
    if (!r.per_join_counts.empty()) CHECK(r.per_join_counts.back().second == r.root_count);
    CHECK(r.root_count == r.solutions.size());
  }
}

TEST_CASE("the result does not depend on the BGP engine") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed + 5000;
    Pattern p = tk::gen_well_designed(cfg);
    Graph g = tk::gen_graph({.seed = seed + 5000});
    PlanTree t = to_plan_tree(p);
    CHECK(evaluate(t, g, ReferenceEngine{}) == evaluate(t, g, NaiveEngine{}));
  }
}

TEST_CASE("pipeline matches the direct oracle") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed + 9000;
    Pattern p = tk::gen_well_designed(cfg);
    Graph g = tk::gen_graph({.seed = seed + 9000});
    CAPTURE(to_string(p));
    CHECK(evaluate(to_plan_tree(p), g, ReferenceEngine{}) == oracle::eval_direct(p, g));
  }
}

TEST_CASE("fallback agrees with the oracle on patterns outside the fragment") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed;
    Pattern p = tk::gen_not_well_designed(cfg);
    Graph g = tk::gen_graph({.seed = seed});
    Query q = query_of(p);
    CHECK_THROWS_AS(run_query(q, g, ReferenceEngine{}), NotWellDesigned);
    CHECK(run_query(q, g, ReferenceEngine{}, EvalMode::OracleFallback).solutions == oracle::eval_direct(p, g));
  }
}

TEST_CASE("larger graphs only extend solutions") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed + 300;
    Pattern p = tk::gen_well_designed(cfg);
    auto [small, large] = tk::gen_graph_pair(seed, 15, 30);
    SolutionSet before = evaluate(to_plan_tree(p), small, ReferenceEngine{});
    SolutionSet after = evaluate(to_plan_tree(p), large, ReferenceEngine{});
    for (const auto& m : before) {
      bool extended = std::any_of(after.begin(), after.end(), [&](const Mapping& n) { return extends(n, m); });
      CHECK(extended);
    }
  }
}

TEST_CASE("the crossing query is not monotone") {
  // Adding a triple removes the only solution rather than extending it.
  Graph g = tk::bloggers();
  std::vector<Triple> without_type;
  for (const auto& t : g.triples())
    if (!(t.subject == tk::id1() && t.predicate == Term::iri(tk::vocab::kRdf + "type"))) without_type.push_back(t);
  Graph g1(without_type);
  SolutionSet before = oracle::eval_direct(tk::bloggers_crossing(), g1);
  SolutionSet after = oracle::eval_direct(tk::bloggers_crossing(), g);
  CHECK_FALSE(before.empty());
  CHECK(after.empty());
}

TEST_CASE("an empty mandatory side matches the oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed + 700;
    Pattern p = Pattern::opt(Pattern::leaf(Bgp{}), tk::gen_well_designed(cfg));
    Graph g = tk::gen_graph({.seed = seed});
    CHECK(evaluate(to_plan_tree(p), g, ReferenceEngine{}) == oracle::eval_direct(p, g));
    CHECK(evaluate(to_plan_tree(p), Graph{}, ReferenceEngine{}) == SolutionSet::unit());
  }
}
