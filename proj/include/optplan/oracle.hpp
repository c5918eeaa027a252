#pragma once

#include "optplan/algebra.hpp"
#include "optplan/rdf.hpp"

namespace optplan::oracle {

/// Direct recursive evaluation of the mapping semantics: full-scan triple matching,
/// AND as join, OPT as left-outer join (join plus difference), FILTER as selection.
/// Works for any pattern, well-designed or not.
SolutionSet eval_direct(const Pattern& p, const Graph& graph);

}  // namespace optplan::oracle
