#include <doctest.h>

#include <algorithm>

#include "optplan/analysis.hpp"
#include "optplan/evaluator.hpp"
#include "optplan/rewrite.hpp"
#include "testkit.hpp"

using namespace optplan;
namespace tk = optplan::testkit;

TEST_CASE("generation is deterministic per seed") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed;
    CHECK(tk::gen_well_designed(cfg) == tk::gen_well_designed(cfg));
    CHECK(tk::gen_not_well_designed(cfg) == tk::gen_not_well_designed(cfg));
    CHECK(tk::gen_graph({.seed = seed}) == tk::gen_graph({.seed = seed}));
    CHECK(tk::gen_bgp(seed, 5, 4) == tk::gen_bgp(seed, 5, 4));
  }
}

TEST_CASE("depth zero gives a pure BGP") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.max_opt_depth = 0;
    cfg.filter_probability = 0.0;
    cfg.seed = seed;
    Pattern p = tk::gen_well_designed(cfg);
    CHECK(opt_count(p) == 0);
    CHECK(to_plan_tree(p).is_leaf());
  }
}

TEST_CASE("benchmark shapes") {
  const std::size_t opts[] = {1, 3, 2, 2};
  for (int shape = 1; shape <= 4; ++shape) {
    Pattern p = tk::benchmark_shape(shape, 11);
    CAPTURE(shape);
    CHECK(is_well_designed(p));
    CHECK(opt_count(p) == opts[shape - 1]);
  }
  PlanTree two = to_plan_tree(tk::benchmark_shape(2, 3));
  CHECK(two.inner_count() == 3);
  CHECK(two.left().left().bgp().patterns.size() == 3);
  CHECK_FALSE(two.right().is_leaf());
  PlanTree four = to_plan_tree(tk::benchmark_shape(4, 3));
  CHECK(four.left().is_leaf());
  CHECK(four.right().left().bgp().patterns.size() == 3);
  CHECK_THROWS(tk::benchmark_shape(5, 0));
}

TEST_CASE("graph pairs are nested") {
  auto [empty, any] = tk::gen_graph_pair(1, 0, 10);
  CHECK(empty.empty());
  CHECK_FALSE(any.empty());
  auto [same_a, same_b] = tk::gen_graph_pair(2, 12, 12);
  CHECK(same_a == same_b);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [g1, g2] = tk::gen_graph_pair(seed, 10, 25);
    CHECK(g1.size() <= g2.size());
    CHECK(std::all_of(g1.triples().begin(), g1.triples().end(), [&](const Triple& t) { return g2.contains(t); }));
  }
  CHECK_THROWS(tk::gen_graph_pair(0, 5, 4));
}

TEST_CASE("university data answers every shape") {
  Graph g = tk::university_graph(5000, 1);
  CHECK(g.size() > 4000);
  CHECK(g.size() < 6000);
  std::size_t joins[5] = {};
  for (int shape = 1; shape <= 4; ++shape) {
    EvalReport r = run_query(tk::university_query(shape), g, ReferenceEngine{});
    CHECK_FALSE(r.solutions.empty());
    joins[shape] = r.per_join_counts.size();
  }
  CHECK(joins[1] == 1);
  CHECK(joins[2] == 3);
  CHECK(joins[3] == 2);
  CHECK(joins[4] == 2);
}
