#include "optplan/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <vector>

#include "optplan/analysis.hpp"

namespace optplan {

using Node = GrammarTree::Node;
using Kind = GrammarTree::Kind;

namespace {

std::unique_ptr<Node> clone(const Node* n) {
  if (n == nullptr) return nullptr;
  return std::make_unique<Node>(Node{n->kind, clone(n->left.get()), clone(n->right.get()), n->constraint, n->triple});
}

bool same(const Node* a, const Node* b) {
  if (a == nullptr || b == nullptr) return a == b;
  return a->kind == b->kind && a->constraint == b->constraint && a->triple == b->triple &&
         same(a->left.get(), b->left.get()) && same(a->right.get(), b->right.get());
}

std::unique_ptr<Node> make(Kind kind, std::unique_ptr<Node> left, std::unique_ptr<Node> right) {
  return std::make_unique<Node>(Node{kind, std::move(left), std::move(right), std::nullopt, std::nullopt});
}

std::unique_ptr<Node> build(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: {
      const auto& patterns = p.bgp().patterns;
      if (patterns.empty()) return std::make_unique<Node>(Node{Kind::Triple, nullptr, nullptr, std::nullopt, std::nullopt});
      auto chain = std::make_unique<Node>(Node{Kind::Triple, nullptr, nullptr, std::nullopt, patterns.front()});
      for (std::size_t i = 1; i < patterns.size(); ++i) {
        auto leaf = std::make_unique<Node>(Node{Kind::Triple, nullptr, nullptr, std::nullopt, patterns[i]});
        chain = make(Kind::And, std::move(chain), std::move(leaf));
      }
      return chain;
    }
    case Pattern::Kind::And:
      return make(Kind::And, build(p.left()), build(p.right()));
    case Pattern::Kind::Opt:
      return make(Kind::Opt, build(p.left()), build(p.right()));
    case Pattern::Kind::Filter: {
      auto n = make(Kind::Filter, build(p.left()), nullptr);
      n->constraint = p.constraint();
      return n;
    }
  }
  return nullptr;
}

Pattern to_pattern(const Node& n) {
  switch (n.kind) {
    case Kind::Triple: return n.triple ? Pattern::leaf(Bgp{{*n.triple}}) : Pattern::leaf(Bgp{});
    case Kind::And: return Pattern::conj(to_pattern(*n.left), to_pattern(*n.right));
    case Kind::Opt: return Pattern::opt(to_pattern(*n.left), to_pattern(*n.right));
    case Kind::Filter: return Pattern::filter(to_pattern(*n.left), *n.constraint);
  }
  return Pattern::leaf(Bgp{});
}

std::size_t height_of(const Node* n) {
  if (n == nullptr) return 0;
  return 1 + std::max(height_of(n->left.get()), height_of(n->right.get()));
}

std::size_t count_of(const Node* n, Kind kind) {
  if (n == nullptr) return 0;
  return (n->kind == kind ? 1 : 0) + count_of(n->left.get(), kind) + count_of(n->right.get(), kind);
}

// Hoists `slot->left` or `slot->right` (an Opt) above `slot`, keeping the
// Opt's right operand as the new root's right operand.
void hoist(std::unique_ptr<Node>& slot, std::unique_ptr<Node> Node::*side) {
  std::unique_ptr<Node> opt = std::move((*slot).*side);
  (*slot).*side = std::move(opt->left);
  opt->left = std::move(slot);
  slot = std::move(opt);
}

bool apply_once(std::unique_ptr<Node>& slot) {
  Node& n = *slot;
  if (n.kind == Kind::And && n.left->kind == Kind::Opt) {
    hoist(slot, &Node::left);  // (P OPT R) AND Q  =>  (P AND Q) OPT R
    return true;
  }
  if (n.kind == Kind::And && n.right->kind == Kind::Opt) {
    hoist(slot, &Node::right);  // P AND (Q OPT R)  =>  (P AND Q) OPT R
    return true;
  }
  if (n.kind == Kind::Filter && n.left->kind == Kind::Opt) {
    hoist(slot, &Node::left);  // (P OPT R) FILTER C  =>  (P FILTER C) OPT R
    return true;
  }
  if (n.left && apply_once(n.left)) return true;
  return n.right && apply_once(n.right);
}

void collect_block(const Node& n, Bgp& bgp, std::vector<Constraint>& constraints) {
  switch (n.kind) {
    case Kind::Triple:
      if (n.triple) bgp.patterns.push_back(*n.triple);
      break;
    case Kind::And:
      collect_block(*n.left, bgp, constraints);
      collect_block(*n.right, bgp, constraints);
      break;
    case Kind::Filter:
      collect_block(*n.left, bgp, constraints);
      constraints.push_back(*n.constraint);
      break;
    case Kind::Opt:
      throw RewriteError("OPT below AND or FILTER: tree is not in OPT normal form");
  }
}

PlanTree merge(const Node& n) {
  if (n.kind == Kind::Opt) return PlanTree::opt(merge(*n.left), merge(*n.right));
  Bgp bgp;
  std::vector<Constraint> constraints;
  collect_block(n, bgp, constraints);
  std::optional<Constraint> combined;
  for (auto& c : constraints) combined = combined ? Constraint::conj(*combined, std::move(c)) : std::move(c);
  return PlanTree::leaf(std::move(bgp), std::move(combined));
}

bool is_empty_leaf(const Pattern& p) { return p.is_leaf() && p.bgp().patterns.empty(); }

// Drops empty BGPs that are operands of AND, where they are the join identity.
Pattern drop_empty_conjuncts(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf:
      return p;
    case Pattern::Kind::And: {
      Pattern l = drop_empty_conjuncts(p.left());
      Pattern r = drop_empty_conjuncts(p.right());
      if (is_empty_leaf(l)) return r;
      if (is_empty_leaf(r)) return l;
      return Pattern::conj(std::move(l), std::move(r));
    }
    case Pattern::Kind::Opt:
      return Pattern::opt(drop_empty_conjuncts(p.left()), drop_empty_conjuncts(p.right()));
    case Pattern::Kind::Filter:
      return Pattern::filter(drop_empty_conjuncts(p.left()), p.constraint());
  }
  return p;
}

}  // namespace

GrammarTree::GrammarTree(std::unique_ptr<Node> root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("grammar tree needs a root");
}

GrammarTree::GrammarTree(const GrammarTree& other) : root_(clone(other.root_.get())) {}

GrammarTree& GrammarTree::operator=(const GrammarTree& other) {
  if (this != &other) root_ = clone(other.root_.get());
  return *this;
}

Pattern GrammarTree::to_pattern() const { return optplan::to_pattern(*root_); }
std::size_t GrammarTree::height() const { return height_of(root_.get()); }
std::size_t GrammarTree::count(Kind kind) const { return count_of(root_.get(), kind); }

bool operator==(const GrammarTree& a, const GrammarTree& b) { return same(a.root_.get(), b.root_.get()); }

GrammarTree build_grammar_tree(const Pattern& p) { return GrammarTree(build(p)); }

GrammarTree rewrite_to_onf(GrammarTree tree, std::size_t* applications) {
  std::size_t steps = 0;
  while (apply_once(tree.root_)) ++steps;
  if (applications != nullptr) *applications = steps;
  return tree;
}

// ---------------------------------------------------------------------------
// PlanTree
// ---------------------------------------------------------------------------

struct PlanTree::Node {
  Bgp bgp;
  std::optional<Constraint> constraint;
  std::vector<PlanTree> children;
};

PlanTree PlanTree::leaf(Bgp bgp, std::optional<Constraint> constraint) {
  return PlanTree(std::make_shared<const Node>(Node{std::move(bgp), std::move(constraint), {}}));
}

PlanTree PlanTree::opt(PlanTree left, PlanTree right) {
  return PlanTree(std::make_shared<const Node>(Node{{}, std::nullopt, {std::move(left), std::move(right)}}));
}

bool PlanTree::is_leaf() const noexcept { return node_->children.empty(); }

const Bgp& PlanTree::bgp() const {
  if (!is_leaf()) throw std::logic_error("OPT node has no BGP");
  return node_->bgp;
}

const std::optional<Constraint>& PlanTree::constraint() const { return node_->constraint; }

const PlanTree& PlanTree::left() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return node_->children[0];
}

const PlanTree& PlanTree::right() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return node_->children[1];
}

std::size_t PlanTree::inner_count() const {
  return is_leaf() ? 0 : 1 + left().inner_count() + right().inner_count();
}

std::size_t PlanTree::leaf_count() const { return is_leaf() ? 1 : left().leaf_count() + right().leaf_count(); }

std::size_t PlanTree::height() const {
  return is_leaf() ? 1 : 1 + std::max(left().height(), right().height());
}

bool operator==(const PlanTree& a, const PlanTree& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->bgp == b.node_->bgp && a.node_->constraint == b.node_->constraint &&
         a.node_->children == b.node_->children;
}

PlanTree merge_and(const GrammarTree& tree) { return merge(tree.root()); }

Pattern flatten(const PlanTree& tree) {
  if (!tree.is_leaf()) return Pattern::opt(flatten(tree.left()), flatten(tree.right()));
  Pattern leaf = Pattern::leaf(tree.bgp());
  return tree.constraint() ? Pattern::filter(std::move(leaf), *tree.constraint()) : leaf;
}

PlanTree to_plan_tree(const Pattern& p) {
  if (auto violation = find_violation(p)) throw NotWellDesigned(std::move(*violation));
  return merge_and(rewrite_to_onf(build_grammar_tree(drop_empty_conjuncts(p))));
}

// ---------------------------------------------------------------------------
// explain
// ---------------------------------------------------------------------------

namespace {

class TermPrinter {
 public:
  explicit TermPrinter(const std::map<std::string, std::string>& prefixes) : prefixes_(prefixes) {}

  std::string operator()(const Term& t) const {
    if (!t.is_iri()) return t.to_ntriples();
    const std::string* best_label = nullptr;
    std::size_t best_len = 0;
    for (const auto& [label, ns] : prefixes_) {
      if (ns.size() > best_len && t.value().size() > ns.size() && t.value().compare(0, ns.size(), ns) == 0 &&
          simple_local(std::string_view(t.value()).substr(ns.size()))) {
        best_label = &label;
        best_len = ns.size();
      }
    }
    if (best_label == nullptr) return t.to_ntriples();
    return *best_label + ":" + t.value().substr(best_len);
  }

  std::string operator()(const PatternTerm& t) const {
    if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
    return (*this)(std::get<Term>(t));
  }

  std::string operator()(const Constraint& c) const {
    switch (c.kind()) {
      case Constraint::Kind::ConstEq:
        return "?" + c.variable().name + " = " + (*this)(c.constant());
      case Constraint::Kind::Not:
        return "!(" + (*this)(c.left()) + ")";
      case Constraint::Kind::And:
        return "(" + (*this)(c.left()) + " && " + (*this)(c.right()) + ")";
      case Constraint::Kind::Or:
        return "(" + (*this)(c.left()) + " || " + (*this)(c.right()) + ")";
      default:
        return to_string(c);
    }
  }

 private:
  static bool simple_local(std::string_view local) {
    if (local.empty() || local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    });
  }

  const std::map<std::string, std::string>& prefixes_;
};

void explain_into(const PlanTree& t, const TermPrinter& print, std::size_t depth, std::string& out) {
  out.append(depth * 2, ' ');
  if (!t.is_leaf()) {
    out += "OPT\n";
    explain_into(t.left(), print, depth + 1, out);
    explain_into(t.right(), print, depth + 1, out);
    return;
  }
  out += "BGP";
  bool first = true;
  for (const auto& tp : t.bgp().patterns) {
    out += first ? " " : " . ";
    first = false;
    out += print(tp.subject) + " " + print(tp.predicate) + " " + print(tp.object);
  }
  if (t.constraint()) out += " FILTER " + print(*t.constraint());
  out += '\n';
}

}  // namespace

std::string explain(const PlanTree& tree, const std::map<std::string, std::string>& prefixes) {
  std::string out;
  explain_into(tree, TermPrinter(prefixes), 0, out);
  return out;
}

}  // namespace optplan
