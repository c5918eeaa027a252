#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "optplan/algebra.hpp"

namespace optplan {

/// Binary parse tree of a pattern whose leaves are single triple patterns.
///
/// Unlike Pattern, nodes are uniquely owned so the rewriting rules can relink
/// subtrees in place.
class GrammarTree {
 public:
  enum class Kind { And, Opt, Filter, Triple };

  struct Node {
    Kind kind;
    std::unique_ptr<Node> left;   // And/Opt left operand, Filter operand
    std::unique_ptr<Node> right;  // And/Opt right operand
    std::optional<Constraint> constraint;
    std::optional<TriplePattern> triple;  // absent on a Triple node standing for the empty BGP
  };

  explicit GrammarTree(std::unique_ptr<Node> root);
  GrammarTree(const GrammarTree& other);
  GrammarTree& operator=(const GrammarTree& other);
  GrammarTree(GrammarTree&&) noexcept = default;
  GrammarTree& operator=(GrammarTree&&) noexcept = default;

  const Node& root() const { return *root_; }

  /// Back to a Pattern; And nodes over triples stay binary (no BGP merging).
  Pattern to_pattern() const;
  std::size_t height() const;
  std::size_t count(Kind kind) const;

  friend bool operator==(const GrammarTree& a, const GrammarTree& b);

 private:
  friend GrammarTree rewrite_to_onf(GrammarTree tree, std::size_t* applications);
  std::unique_ptr<Node> root_;
};

/// Raised for inputs outside an operation's precondition, e.g. an OPT below an AND
/// during merging.
class RewriteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Leaf with k triple patterns becomes a left-deep AND chain of k triple leaves; the
/// empty BGP becomes a single Triple node without a triple.
GrammarTree build_grammar_tree(const Pattern& p);

/// Applies, leftmost-outermost until none matches:
///   (P OPT R) AND Q     =>  (P AND Q) OPT R
///   P AND (Q OPT R)     =>  (P AND Q) OPT R
///   (P OPT R) FILTER C  =>  (P FILTER C) OPT R
/// Semantics-preserving only for well-designed input. `applications`, if given,
/// receives the number of rule applications.
GrammarTree rewrite_to_onf(GrammarTree tree, std::size_t* applications = nullptr);

/// Query plan: every inner node is OPT, every leaf a BGP with an optional constraint.
class PlanTree {
 public:
  static PlanTree leaf(Bgp bgp, std::optional<Constraint> constraint = std::nullopt);
  static PlanTree opt(PlanTree left, PlanTree right);

  bool is_leaf() const noexcept;
  const Bgp& bgp() const;
  const std::optional<Constraint>& constraint() const;
  const PlanTree& left() const;
  const PlanTree& right() const;

  std::size_t inner_count() const;
  std::size_t leaf_count() const;
  std::size_t height() const;

  friend bool operator==(const PlanTree& a, const PlanTree& b);

 private:
  struct Node;
  explicit PlanTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Collapses each maximal AND/FILTER block into one BGP leaf (triples in left-to-right
/// order, filter constraints conjoined in post-order). Throws RewriteError if an OPT
/// sits below an AND or FILTER.
PlanTree merge_and(const GrammarTree& tree);

/// A leaf becomes its BGP, or `BGP FILTER C` when it carries a constraint.
Pattern flatten(const PlanTree& tree);

/// build_grammar_tree, rewrite_to_onf, merge_and. Throws NotWellDesigned first if `p` is not
/// well-designed. Empty BGPs under AND are dropped first; elsewhere they become empty leaves.
PlanTree to_plan_tree(const Pattern& p);

/// One node per line, two spaces of indentation per level:
///
///     OPT
///       BGP ?x <p> ?y . ?x <q> ?z
///       BGP ?y <r> ?w FILTER BOUND(?w)
///
/// IRIs under one of `prefixes` (label -> namespace) are abbreviated to `label:local`.
std::string explain(const PlanTree& tree, const std::map<std::string, std::string>& prefixes = {});

}  // namespace optplan
