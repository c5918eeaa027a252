#include "optplan/oracle.hpp"

namespace optplan::oracle {

namespace {

// Constants map to themselves; a variable binds the term at its position.
SolutionSet triple_pattern(const TriplePattern& tp, const Graph& graph) {
  std::vector<Mapping> out;
  for (const Triple& t : graph.triples()) {
    Mapping m;
    auto matches = [&](const PatternTerm& pt, const Term& value) {
      if (const auto* v = std::get_if<Variable>(&pt)) {
        const Term* prior = m.get(*v);
        if (prior != nullptr) return *prior == value;
        m.bind(*v, value);
        return true;
      }
      return std::get<Term>(pt) == value;
    };
    if (matches(tp.subject, t.subject) && matches(tp.predicate, t.predicate) && matches(tp.object, t.object))
      out.push_back(std::move(m));
  }
  return SolutionSet(std::move(out));
}

}  // namespace

SolutionSet eval_direct(const Pattern& p, const Graph& graph) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: {
      SolutionSet acc = SolutionSet::unit();
      for (const auto& tp : p.bgp().patterns) acc = join(acc, triple_pattern(tp, graph));
      return acc;
    }
    case Pattern::Kind::And:
      return join(eval_direct(p.left(), graph), eval_direct(p.right(), graph));
    case Pattern::Kind::Opt: {
      SolutionSet left = eval_direct(p.left(), graph);
      SolutionSet right = eval_direct(p.right(), graph);
      return set_union(join(left, right), difference(left, right));
    }
    case Pattern::Kind::Filter:
      return filter_solutions(eval_direct(p.left(), graph), p.constraint());
  }
  return {};
}

}  // namespace optplan::oracle
