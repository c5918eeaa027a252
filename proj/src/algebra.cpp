#include "optplan/algebra.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace optplan {

Variable::Variable(std::string n) : name(std::move(n)) {
  if (name.empty()) throw std::invalid_argument("variable name must not be empty");
}

std::ostream& operator<<(std::ostream& os, const Variable& var) { return os << '?' << var.name; }

std::string to_string(const PatternTerm& term) {
  if (const auto* v = std::get_if<Variable>(&term)) return "?" + v->name;
  return std::get<Term>(term).to_ntriples();
}

std::string to_string(const TriplePattern& tp) {
  return to_string(tp.subject) + " " + to_string(tp.predicate) + " " + to_string(tp.object);
}

// ---------------------------------------------------------------------------
// Three-valued logic
// ---------------------------------------------------------------------------

Truth truth_and(Truth a, Truth b) noexcept {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Error || b == Truth::Error) return Truth::Error;
  return Truth::True;
}

Truth truth_or(Truth a, Truth b) noexcept {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::Error || b == Truth::Error) return Truth::Error;
  return Truth::False;
}

Truth truth_not(Truth a) noexcept {
  switch (a) {
    case Truth::True: return Truth::False;
    case Truth::False: return Truth::True;
    case Truth::Error: return Truth::Error;
  }
  return Truth::Error;
}

const char* to_string(Truth t) noexcept {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Error: return "error";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Constraint
// ---------------------------------------------------------------------------

struct Constraint::Node {
  Kind kind;
  Variable first;
  Variable second;
  std::optional<Term> constant;
  std::vector<Constraint> operands;
};

Constraint Constraint::bound(Variable v) {
  return Constraint(std::make_shared<const Node>(Node{Kind::Bound, std::move(v), {}, {}, {}}));
}

Constraint Constraint::equals(Variable a, Variable b) {
  return Constraint(std::make_shared<const Node>(Node{Kind::VarEq, std::move(a), std::move(b), {}, {}}));
}

Constraint Constraint::equals(Variable a, Term c) {
  return Constraint(std::make_shared<const Node>(Node{Kind::ConstEq, std::move(a), {}, std::move(c), {}}));
}

Constraint Constraint::negate(Constraint c) {
  return Constraint(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {}, {std::move(c)}}));
}

Constraint Constraint::conj(Constraint a, Constraint b) {
  return Constraint(std::make_shared<const Node>(Node{Kind::And, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Constraint Constraint::disj(Constraint a, Constraint b) {
  return Constraint(std::make_shared<const Node>(Node{Kind::Or, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Constraint::Kind Constraint::kind() const noexcept { return node_->kind; }

const Variable& Constraint::variable() const {
  if (kind() != Kind::Bound && kind() != Kind::VarEq && kind() != Kind::ConstEq)
    throw std::logic_error("constraint has no variable");
  return node_->first;
}

const Variable& Constraint::other_variable() const {
  if (kind() != Kind::VarEq) throw std::logic_error("constraint is not a variable equality");
  return node_->second;
}

const Term& Constraint::constant() const {
  if (kind() != Kind::ConstEq) throw std::logic_error("constraint is not a constant equality");
  return *node_->constant;
}

const Constraint& Constraint::left() const {
  if (node_->operands.empty()) throw std::logic_error("constraint has no operands");
  return node_->operands[0];
}

const Constraint& Constraint::right() const {
  if (node_->operands.size() < 2) throw std::logic_error("constraint has no right operand");
  return node_->operands[1];
}

bool operator==(const Constraint& a, const Constraint& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.first == y.first && x.second == y.second && x.constant == y.constant &&
         x.operands == y.operands;
}

std::string to_string(const Constraint& c) {
  switch (c.kind()) {
    case Constraint::Kind::Bound:
      return "BOUND(?" + c.variable().name + ")";
    case Constraint::Kind::VarEq:
      return "?" + c.variable().name + " = ?" + c.other_variable().name;
    case Constraint::Kind::ConstEq:
      return "?" + c.variable().name + " = " + c.constant().to_ntriples();
    case Constraint::Kind::Not:
      return "!(" + to_string(c.left()) + ")";
    case Constraint::Kind::And:
      return "(" + to_string(c.left()) + " && " + to_string(c.right()) + ")";
    case Constraint::Kind::Or:
      return "(" + to_string(c.left()) + " || " + to_string(c.right()) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Pattern
// ---------------------------------------------------------------------------

struct Pattern::Node {
  Kind kind;
  Bgp bgp;
  std::vector<Pattern> children;
  std::optional<Constraint> constraint;
};

Pattern Pattern::leaf(Bgp bgp) {
  return Pattern(std::make_shared<const Node>(Node{Kind::Leaf, std::move(bgp), {}, {}}));
}

Pattern Pattern::leaf(std::initializer_list<TriplePattern> patterns) { return leaf(Bgp{patterns}); }

Pattern Pattern::conj(Pattern left, Pattern right) {
  return Pattern(std::make_shared<const Node>(Node{Kind::And, {}, {std::move(left), std::move(right)}, {}}));
}

Pattern Pattern::opt(Pattern left, Pattern right) {
  return Pattern(std::make_shared<const Node>(Node{Kind::Opt, {}, {std::move(left), std::move(right)}, {}}));
}

Pattern Pattern::filter(Pattern inner, Constraint c) {
  return Pattern(std::make_shared<const Node>(Node{Kind::Filter, {}, {std::move(inner)}, std::move(c)}));
}

Pattern::Kind Pattern::kind() const noexcept { return node_->kind; }

const Bgp& Pattern::bgp() const {
  if (kind() != Kind::Leaf) throw std::logic_error("pattern is not a BGP leaf");
  return node_->bgp;
}

const Pattern& Pattern::left() const {
  if (node_->children.empty()) throw std::logic_error("BGP leaf has no operands");
  return node_->children[0];
}

const Pattern& Pattern::right() const {
  if (node_->children.size() < 2) throw std::logic_error("pattern has no right operand");
  return node_->children[1];
}

const Constraint& Pattern::constraint() const {
  if (kind() != Kind::Filter) throw std::logic_error("pattern is not a filter");
  return *node_->constraint;
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.bgp == y.bgp && x.children == y.children && x.constraint == y.constraint;
}

std::string to_string(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: {
      if (p.bgp().patterns.empty()) return "{}";
      std::string out;
      for (const auto& tp : p.bgp().patterns) {
        if (!out.empty()) out += " AND ";
        out += "(" + to_string(tp) + ")";
      }
      return p.bgp().patterns.size() > 1 ? "(" + out + ")" : out;
    }
    case Pattern::Kind::And:
      return "(" + to_string(p.left()) + " AND " + to_string(p.right()) + ")";
    case Pattern::Kind::Opt:
      return "(" + to_string(p.left()) + " OPT " + to_string(p.right()) + ")";
    case Pattern::Kind::Filter:
      return "(" + to_string(p.left()) + " FILTER " + to_string(p.constraint()) + ")";
  }
  return {};
}

std::size_t opt_count(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: return 0;
    case Pattern::Kind::Filter: return opt_count(p.left());
    case Pattern::Kind::And: return opt_count(p.left()) + opt_count(p.right());
    case Pattern::Kind::Opt: return 1 + opt_count(p.left()) + opt_count(p.right());
  }
  return 0;
}

std::size_t triple_count(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: return p.bgp().patterns.size();
    case Pattern::Kind::Filter: return triple_count(p.left());
    default: return triple_count(p.left()) + triple_count(p.right());
  }
}

namespace {

void collect(const PatternTerm& t, VariableSet& out) {
  if (const auto* v = std::get_if<Variable>(&t)) out.insert(*v);
}

void collect(const Constraint& c, VariableSet& out) {
  switch (c.kind()) {
    case Constraint::Kind::Bound:
    case Constraint::Kind::ConstEq:
      out.insert(c.variable());
      break;
    case Constraint::Kind::VarEq:
      out.insert(c.variable());
      out.insert(c.other_variable());
      break;
    case Constraint::Kind::Not:
      collect(c.left(), out);
      break;
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
      collect(c.left(), out);
      collect(c.right(), out);
      break;
  }
}

void collect(const Pattern& p, VariableSet& out) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf:
      for (const auto& tp : p.bgp().patterns) {
        collect(tp.subject, out);
        collect(tp.predicate, out);
        collect(tp.object, out);
      }
      break;
    case Pattern::Kind::Filter:
      collect(p.left(), out);
      collect(p.constraint(), out);
      break;
    default:
      collect(p.left(), out);
      collect(p.right(), out);
  }
}

}  // namespace

VariableSet vars(const TriplePattern& tp) {
  VariableSet out;
  collect(tp.subject, out);
  collect(tp.predicate, out);
  collect(tp.object, out);
  return out;
}

VariableSet vars(const Bgp& bgp) {
  VariableSet out;
  for (const auto& tp : bgp.patterns) out.merge(vars(tp));
  return out;
}

VariableSet vars(const Constraint& c) {
  VariableSet out;
  collect(c, out);
  return out;
}

VariableSet vars(const Pattern& p) {
  VariableSet out;
  collect(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Mapping
// ---------------------------------------------------------------------------

Mapping::Mapping(std::initializer_list<Binding> bindings) {
  for (const auto& [v, t] : bindings) bind(v, t);
}

void Mapping::bind(const Variable& v, const Term& t) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const Variable& key) { return b.first < key; });
  if (it != bindings_.end() && it->first == v) {
    if (it->second != t) throw std::invalid_argument("variable ?" + v.name + " is already bound");
    return;
  }
  bindings_.insert(it, Binding{v, t});
}

const Term* Mapping::get(const Variable& v) const noexcept {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const Variable& key) { return b.first < key; });
  if (it != bindings_.end() && it->first == v) return &it->second;
  return nullptr;
}

VariableSet Mapping::domain() const {
  VariableSet out;
  for (const auto& b : bindings_) out.insert(out.end(), b.first);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Mapping& m) {
  os << '{';
  bool first = true;
  for (const auto& [v, t] : m) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << t;
  }
  return os << '}';
}

bool compatible(const Mapping& a, const Mapping& b) noexcept {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (i->second != j->second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

Mapping merge(const Mapping& a, const Mapping& b) {
  Mapping out;
  out.bindings_.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.bindings_.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.bindings_.push_back(*j++);
    } else {
      if (i->second != j->second) throw std::invalid_argument("merging incompatible mappings");
      out.bindings_.push_back(*i);
      ++i;
      ++j;
    }
  }
  return out;
}

Mapping restrict(const Mapping& m, const VariableSet& keep) {
  Mapping out;
  for (const auto& [v, t] : m)
    if (keep.contains(v)) out.bind(v, t);
  return out;
}

bool extends(const Mapping& big, const Mapping& small) noexcept {
  for (const auto& [v, t] : small) {
    const Term* bound = big.get(v);
    if (bound == nullptr || *bound != t) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SolutionSet
// ---------------------------------------------------------------------------

SolutionSet::SolutionSet(std::vector<Mapping> mappings) : rows_(std::move(mappings)) {
  std::sort(rows_.begin(), rows_.end());
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

SolutionSet::SolutionSet(std::initializer_list<Mapping> mappings)
    : SolutionSet(std::vector<Mapping>(mappings)) {}

SolutionSet SolutionSet::unit() { return SolutionSet{Mapping{}}; }

bool SolutionSet::contains(const Mapping& m) const { return std::binary_search(rows_.begin(), rows_.end(), m); }

std::ostream& operator<<(std::ostream& os, const SolutionSet& s) {
  os << '[';
  bool first = true;
  for (const auto& m : s) {
    if (!first) os << ", ";
    first = false;
    os << m;
  }
  return os << ']';
}

namespace {

// Variables bound by every member; empty input yields the empty set.
VariableSet certain_variables(const SolutionSet& s) {
  if (s.empty()) return {};
  VariableSet common = s.begin()->domain();
  for (const auto& m : s) {
    if (common.empty()) break;
    std::erase_if(common, [&](const Variable& v) { return !m.binds(v); });
  }
  return common;
}

// Buckets the right-hand side by the terms of variables every mapping on both
// sides binds; compatible pairs always share a bucket.
class CompatibilityIndex {
 public:
  CompatibilityIndex(const SolutionSet& probe_side, const SolutionSet& build_side) : build_(build_side) {
    VariableSet a = certain_variables(probe_side);
    VariableSet b = certain_variables(build_side);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(keys_));
    if (keys_.empty()) return;
    for (std::size_t i = 0; i < build_.mappings().size(); ++i)
      buckets_[hash_of(build_.mappings()[i])].push_back(i);
  }

  template <typename F>
  void for_each_compatible(const Mapping& m, F&& f) const {
    if (keys_.empty()) {
      for (const auto& other : build_)
        if (compatible(m, other)) f(other);
      return;
    }
    auto it = buckets_.find(hash_of(m));
    if (it == buckets_.end()) return;
    for (std::size_t i : it->second) {
      const Mapping& other = build_.mappings()[i];
      if (compatible(m, other)) f(other);
    }
  }

  bool has_compatible(const Mapping& m) const {
    bool found = false;
    if (keys_.empty()) {
      return std::any_of(build_.begin(), build_.end(), [&](const Mapping& o) { return compatible(m, o); });
    }
    auto it = buckets_.find(hash_of(m));
    if (it == buckets_.end()) return false;
    for (std::size_t i : it->second) {
      if (compatible(m, build_.mappings()[i])) {
        found = true;
        break;
      }
    }
    return found;
  }

 private:
  std::size_t hash_of(const Mapping& m) const {
    std::size_t h = 0;
    for (const auto& v : keys_) h = h * 1000003u ^ std::hash<Term>{}(*m.get(v));
    return h;
  }

  const SolutionSet& build_;
  std::vector<Variable> keys_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

SolutionSet join(const SolutionSet& left, const SolutionSet& right) {
  if (left.empty() || right.empty()) return {};
  CompatibilityIndex index(left, right);
  std::vector<Mapping> out;
  for (const auto& m : left) index.for_each_compatible(m, [&](const Mapping& other) { out.push_back(merge(m, other)); });
  return SolutionSet(std::move(out));
}

SolutionSet difference(const SolutionSet& left, const SolutionSet& right) {
  if (right.empty()) return left;
  CompatibilityIndex index(left, right);
  std::vector<Mapping> out;
  for (const auto& m : left)
    if (!index.has_compatible(m)) out.push_back(m);
  return SolutionSet(std::move(out));
}

SolutionSet left_outer_join(const SolutionSet& left, const SolutionSet& right) {
  if (left.empty()) return {};
  if (right.empty()) return left;
  CompatibilityIndex index(left, right);
  std::vector<Mapping> out;
  for (const auto& m : left) {
    bool matched = false;
    index.for_each_compatible(m, [&](const Mapping& other) {
      matched = true;
      out.push_back(merge(m, other));
    });
    if (!matched) out.push_back(m);
  }
  return SolutionSet(std::move(out));
}

SolutionSet set_union(const SolutionSet& a, const SolutionSet& b) {
  std::vector<Mapping> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return SolutionSet(std::move(out));
}

SolutionSet project(const SolutionSet& s, const VariableSet& keep) {
  std::vector<Mapping> out;
  out.reserve(s.size());
  for (const auto& m : s) out.push_back(restrict(m, keep));
  return SolutionSet(std::move(out));
}

Truth eval_constraint(const Mapping& m, const Constraint& c) {
  switch (c.kind()) {
    case Constraint::Kind::Bound:
      return m.binds(c.variable()) ? Truth::True : Truth::False;
    case Constraint::Kind::VarEq: {
      const Term* a = m.get(c.variable());
      const Term* b = m.get(c.other_variable());
      if (a == nullptr || b == nullptr) return Truth::Error;
      return *a == *b ? Truth::True : Truth::False;
    }
    case Constraint::Kind::ConstEq: {
      const Term* a = m.get(c.variable());
      if (a == nullptr) return Truth::Error;
      return *a == c.constant() ? Truth::True : Truth::False;
    }
    case Constraint::Kind::Not:
      return truth_not(eval_constraint(m, c.left()));
    case Constraint::Kind::And:
      return truth_and(eval_constraint(m, c.left()), eval_constraint(m, c.right()));
    case Constraint::Kind::Or:
      return truth_or(eval_constraint(m, c.left()), eval_constraint(m, c.right()));
  }
  return Truth::Error;
}

SolutionSet filter_solutions(const SolutionSet& s, const Constraint& c) {
  std::vector<Mapping> out;
  for (const auto& m : s)
    if (eval_constraint(m, c) == Truth::True) out.push_back(m);
  return SolutionSet(std::move(out));
}

}  // namespace optplan
