#include <doctest.h>

#include <array>
#include <random>

#include "optplan/algebra.hpp"
#include "testkit.hpp"

using namespace optplan;
namespace tk = optplan::testkit;

namespace {

const Variable X("x"), Y("y"), Z("z"), W("w");
const Term A = tk::entity(0), B = tk::entity(1), C = tk::entity(2);

// Nested-loop definitions straight from the mapping semantics, kept apart from the
// hashed implementations under test.
namespace ref {

bool compatible(const Mapping& a, const Mapping& b) {
  for (const auto& [v, t] : a) {
    const Term* other = b.get(v);
    if (other != nullptr && *other != t) return false;
  }
  return true;
}

Mapping merge(const Mapping& a, const Mapping& b) {
  Mapping out = a;
  for (const auto& [v, t] : b)
    if (!out.binds(v)) out.bind(v, t);
  return out;
}

SolutionSet join(const SolutionSet& l, const SolutionSet& r) {
  std::vector<Mapping> out;
  for (const auto& a : l)
    for (const auto& b : r)
      if (ref::compatible(a, b)) out.push_back(ref::merge(a, b));
  return SolutionSet(std::move(out));
}

SolutionSet difference(const SolutionSet& l, const SolutionSet& r) {
  std::vector<Mapping> out;
  for (const auto& a : l) {
    bool any = false;
    for (const auto& b : r) any = any || ref::compatible(a, b);
    if (!any) out.push_back(a);
  }
  return SolutionSet(std::move(out));
}

SolutionSet left_outer_join(const SolutionSet& l, const SolutionSet& r) {
  std::vector<Mapping> out = ref::join(l, r).mappings();
  for (const auto& m : ref::difference(l, r)) out.push_back(m);
  return SolutionSet(std::move(out));
}

}  // namespace ref

SolutionSet random_solutions(std::mt19937_64& rng) {
  const std::array<Variable, 4> pool{X, Y, Z, W};
  const std::array<Term, 3> values{A, B, C};
  std::size_t n = rng() % 21;
  std::vector<Mapping> out;
  for (std::size_t i = 0; i < n; ++i) {
    Mapping m;
    for (const auto& v : pool)
      if (rng() % 2 == 0) m.bind(v, values[rng() % values.size()]);
    out.push_back(std::move(m));
  }
  return SolutionSet(std::move(out));
}

}  // namespace

TEST_CASE("three-valued connectives follow the frozen truth tables") {
  using enum Truth;
  // (p, q, p AND q, p OR q), row by row.
  const std::array<std::array<Truth, 4>, 9> binary{{
      {True, True, True, True},
      {True, False, False, True},
      {True, Error, Error, True},
      {False, True, False, True},
      {False, False, False, False},
      {False, Error, False, Error},
      {Error, True, Error, True},
      {Error, False, False, Error},
      {Error, Error, Error, Error},
  }};
  for (const auto& [p, q, conj, disj] : binary) {
    CAPTURE(to_string(p));
    CAPTURE(to_string(q));
    CHECK(truth_and(p, q) == conj);
    CHECK(truth_or(p, q) == disj);
  }
  CHECK(truth_not(True) == False);
  CHECK(truth_not(False) == True);
  CHECK(truth_not(Error) == Error);
}

TEST_CASE("De Morgan holds over all nine pairs") {
  const std::array<Truth, 3> all{Truth::True, Truth::False, Truth::Error};
  for (Truth p : all)
    for (Truth q : all) {
      CHECK(truth_not(truth_and(p, q)) == truth_or(truth_not(p), truth_not(q)));
      CHECK(truth_not(truth_or(p, q)) == truth_and(truth_not(p), truth_not(q)));
    }
}

TEST_CASE("constraints over partial mappings") {
  Mapping m{{X, A}, {Y, A}};
  CHECK(eval_constraint(m, Constraint::bound(X)) == Truth::True);
  CHECK(eval_constraint(m, Constraint::bound(Z)) == Truth::False);
  CHECK(eval_constraint(m, Constraint::equals(X, Y)) == Truth::True);
  CHECK(eval_constraint(m, Constraint::equals(X, B)) == Truth::False);
  CHECK(eval_constraint(m, Constraint::equals(X, Z)) == Truth::Error);
  CHECK(eval_constraint(m, Constraint::equals(Z, A)) == Truth::Error);
  CHECK(eval_constraint(m, Constraint::negate(Constraint::equals(Z, A))) == Truth::Error);
  CHECK(eval_constraint(m, Constraint::disj(Constraint::equals(Z, A), Constraint::bound(X))) == Truth::True);
  CHECK(eval_constraint(m, Constraint::conj(Constraint::equals(Z, A), Constraint::bound(Z))) == Truth::False);

  // Error and False both drop the mapping.
  SolutionSet s{m, Mapping{{X, B}}};
  CHECK(filter_solutions(s, Constraint::equals(X, Y)) == SolutionSet{m});
  CHECK(filter_solutions(s, Constraint::negate(Constraint::equals(X, Y))) == SolutionSet{});
}

TEST_CASE("mappings reject conflicting bindings") {
  Mapping m{{X, A}};
  CHECK_NOTHROW(m.bind(X, A));
  CHECK_THROWS(m.bind(X, B));
  CHECK_THROWS(Variable(""));
  CHECK(m.domain() == VariableSet{X});
}

TEST_CASE("small operator examples") {
  Mapping xa{{X, A}}, xb{{X, B}}, ya{{Y, A}}, xa_yb{{X, A}, {Y, B}};
  CHECK(compatible(xa, ya));
  CHECK_FALSE(compatible(xa, xb));
  CHECK(compatible(Mapping{}, xa_yb));
  CHECK(merge(xa, ya) == Mapping{{X, A}, {Y, A}});
  CHECK(extends(xa_yb, xa));
  CHECK_FALSE(extends(xa, xa_yb));

  SolutionSet left{xa, xb}, right{xa_yb};
  CHECK(join(left, right) == SolutionSet{xa_yb});
  CHECK(difference(left, right) == SolutionSet{xb});
  CHECK(left_outer_join(left, right) == SolutionSet{xa_yb, xb});
  CHECK(project(SolutionSet{xa_yb, xa}, {X}) == SolutionSet{xa});
  CHECK(project(SolutionSet{xa_yb}, {Z}) == SolutionSet::unit());
}

TEST_CASE("identities of the unit and empty sets") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    SolutionSet s = random_solutions(rng);
    CHECK(join(s, SolutionSet::unit()) == s);
    CHECK(join(s, SolutionSet{}) == SolutionSet{});
    CHECK(difference(s, SolutionSet{}) == s);
    CHECK(left_outer_join(s, SolutionSet{}) == s);
    CHECK(left_outer_join(SolutionSet{}, s) == SolutionSet{});
    CHECK(set_union(s, s) == s);
  }
}

TEST_CASE("hashed operators equal nested-loop definitions on random inputs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 400; ++i) {
    SolutionSet l = random_solutions(rng), r = random_solutions(rng);
    CHECK(join(l, r) == ref::join(l, r));
    CHECK(difference(l, r) == ref::difference(l, r));
    CHECK(left_outer_join(l, r) == ref::left_outer_join(l, r));
    for (const auto& a : l)
      for (const auto& b : r) CHECK(compatible(a, b) == ref::compatible(a, b));
  }
}

TEST_CASE("join is commutative and associative") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    SolutionSet a = random_solutions(rng), b = random_solutions(rng), c = random_solutions(rng);
    CHECK(join(a, b) == join(b, a));
    CHECK(join(join(a, b), c) == join(a, join(b, c)));
    CHECK(left_outer_join(a, b) == set_union(join(a, b), difference(a, b)));
  }
}
