#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "optplan/algebra.hpp"
#include "optplan/bgp_engine.hpp"
#include "optplan/query.hpp"
#include "optplan/rdf.hpp"
#include "optplan/rewrite.hpp"

namespace optplan {

enum class EvalMode {
  /// Reject patterns that are not well-designed with NotWellDesigned.
  Strict,
  /// Evaluate patterns that are not well-designed with the direct oracle instead.
  OracleFallback,
};

struct PhaseTimes {
  using Duration = std::chrono::nanoseconds;
  Duration rewrite{0};
  Duration leaf_eval{0};
  Duration join{0};
  Duration project{0};
};

struct EvalReport {
  /// Final, projected solutions.
  SolutionSet solutions;
  /// Size of the root result before projection.
  std::size_t root_count = 0;
  /// (leaf index in left-to-right order, mappings after the leaf's filter).
  std::vector<std::pair<std::size_t, std::size_t>> per_leaf_counts;
  /// (OPT node index in post-order, mappings produced by its left-outer join).
  std::vector<std::pair<std::size_t, std::size_t>> per_join_counts;
  /// Depth of the result stack after each visited node, in post-order.
  std::vector<std::size_t> stack_depths;
  PhaseTimes times;
  /// The plan, absent when the oracle evaluated the pattern.
  std::optional<PlanTree> plan;
  bool used_oracle = false;
};

/// Post-order walk of the plan: each leaf pushes the engine's answer (filtered by the
/// leaf constraint), each OPT node pops right then left and pushes their left-outer join.
SolutionSet evaluate(const PlanTree& tree, const Graph& graph, const BgpEngine& engine);

/// evaluate() plus per-node counts, stack trace and timings. `solutions` is unprojected.
EvalReport evaluate_with_report(const PlanTree& tree, const Graph& graph, const BgpEngine& engine);

/// Rewrites the query pattern to a plan, evaluates it and projects onto the output variables.
/// Throws NotWellDesigned in strict mode for patterns outside the well-designed fragment.
EvalReport run_query(const Query& q, const Graph& graph, const BgpEngine& engine,
                     EvalMode mode = EvalMode::Strict);

}  // namespace optplan
