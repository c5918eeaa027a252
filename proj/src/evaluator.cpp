#include "optplan/evaluator.hpp"

#include <stdexcept>

#include "optplan/analysis.hpp"
#include "optplan/oracle.hpp"

namespace optplan {

namespace {

using Clock = std::chrono::steady_clock;

class PostOrderWalk {
 public:
  PostOrderWalk(const Graph& graph, const BgpEngine& engine, EvalReport* report)
      : graph_(graph), engine_(engine), report_(report) {}

  SolutionSet run(const PlanTree& root) {
    visit(root);
    if (stack_.size() != 1)
      throw std::logic_error("malformed plan: result stack holds " + std::to_string(stack_.size()) + " entries");
    return std::move(stack_.back());
  }

 private:
  void visit(const PlanTree& node) {
    if (!node.is_leaf()) {
      visit(node.left());
      visit(node.right());
      if (stack_.size() < 2) throw std::logic_error("malformed plan: result stack underflow");
      auto start = Clock::now();
      SolutionSet r = std::move(stack_.back());
      stack_.pop_back();
      SolutionSet l = std::move(stack_.back());
      stack_.pop_back();
      stack_.push_back(left_outer_join(l, r));
      if (report_ != nullptr) {
        report_->times.join += Clock::now() - start;
        report_->per_join_counts.emplace_back(joins_++, stack_.back().size());
        report_->stack_depths.push_back(stack_.size());
      }
      return;
    }
    auto start = Clock::now();
    SolutionSet s = engine_.evaluate(graph_, node.bgp());
    if (node.constraint()) s = filter_solutions(s, *node.constraint());
    stack_.push_back(std::move(s));
    if (report_ != nullptr) {
      report_->times.leaf_eval += Clock::now() - start;
      report_->per_leaf_counts.emplace_back(leaves_++, stack_.back().size());
      report_->stack_depths.push_back(stack_.size());
    }
  }

  const Graph& graph_;
  const BgpEngine& engine_;
  EvalReport* report_;
  std::vector<SolutionSet> stack_;
  std::size_t leaves_ = 0;
  std::size_t joins_ = 0;
};

}  // namespace

SolutionSet evaluate(const PlanTree& tree, const Graph& graph, const BgpEngine& engine) {
  return PostOrderWalk(graph, engine, nullptr).run(tree);
}

EvalReport evaluate_with_report(const PlanTree& tree, const Graph& graph, const BgpEngine& engine) {
  EvalReport report;
  report.solutions = PostOrderWalk(graph, engine, &report).run(tree);
  report.root_count = report.solutions.size();
  report.plan = tree;
  return report;
}

EvalReport run_query(const Query& q, const Graph& graph, const BgpEngine& engine, EvalMode mode) {
  EvalReport report;
  auto violation = find_violation(q.pattern);
  if (violation && mode == EvalMode::Strict) throw NotWellDesigned(std::move(*violation));

  if (violation) {
    auto start = Clock::now();
    report.solutions = oracle::eval_direct(q.pattern, graph);
    report.times.leaf_eval = Clock::now() - start;
    report.root_count = report.solutions.size();
    report.used_oracle = true;
  } else {
    auto start = Clock::now();
    PlanTree plan = to_plan_tree(q.pattern);
    auto rewrite_time = Clock::now() - start;
    report = evaluate_with_report(plan, graph, engine);
    report.times.rewrite = rewrite_time;
  }

  auto start = Clock::now();
  report.solutions = project(report.solutions, output_variables(q));
  report.times.project = Clock::now() - start;
  return report;
}

}  // namespace optplan
