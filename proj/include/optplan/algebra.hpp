#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "optplan/rdf.hpp"

namespace optplan {

/// A query variable. `name` excludes the leading `?`.
struct Variable {
  std::string name;

  Variable() = default;
  explicit Variable(std::string n);

  friend bool operator==(const Variable&, const Variable&) = default;
  friend std::strong_ordering operator<=>(const Variable&, const Variable&) = default;
};

std::ostream& operator<<(std::ostream& os, const Variable& var);

using VariableSet = std::set<Variable>;

/// One position of a triple pattern.
using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

/// `?x <p> "o"` style rendering.
std::string to_string(const PatternTerm& term);
std::string to_string(const TriplePattern& pattern);

struct Bgp {
  std::vector<TriplePattern> patterns;

  friend bool operator==(const Bgp&, const Bgp&) = default;
};

// ---------------------------------------------------------------------------
// Filter constraints
// ---------------------------------------------------------------------------

enum class Truth : std::uint8_t { True, False, Error };

Truth truth_and(Truth a, Truth b) noexcept;
Truth truth_or(Truth a, Truth b) noexcept;
Truth truth_not(Truth a) noexcept;
const char* to_string(Truth t) noexcept;

/// Boolean combination of `bound(?x)`, `?x = ?y` and `?x = c`. Immutable, cheap to copy.
class Constraint {
 public:
  enum class Kind : std::uint8_t { Bound, VarEq, ConstEq, Not, And, Or };

  static Constraint bound(Variable v);
  static Constraint equals(Variable a, Variable b);
  static Constraint equals(Variable a, Term c);
  static Constraint negate(Constraint c);
  static Constraint conj(Constraint a, Constraint b);
  static Constraint disj(Constraint a, Constraint b);

  Kind kind() const noexcept;
  /// The first variable of Bound/VarEq/ConstEq.
  const Variable& variable() const;
  /// The second variable of VarEq.
  const Variable& other_variable() const;
  /// The constant of ConstEq.
  const Term& constant() const;
  /// Operand of Not, left operand of And/Or.
  const Constraint& left() const;
  const Constraint& right() const;

  friend bool operator==(const Constraint& a, const Constraint& b);

 private:
  struct Node;
  explicit Constraint(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// SPARQL expression syntax, e.g. `(BOUND(?x) && ?x = <a>)`.
std::string to_string(const Constraint& c);

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// AND/OPT/FILTER pattern tree over BGP leaves. Immutable, cheap to copy.
class Pattern {
 public:
  enum class Kind : std::uint8_t { Leaf, And, Opt, Filter };

  static Pattern leaf(Bgp bgp);
  static Pattern leaf(std::initializer_list<TriplePattern> patterns);
  static Pattern conj(Pattern left, Pattern right);
  static Pattern opt(Pattern left, Pattern right);
  static Pattern filter(Pattern inner, Constraint c);

  Kind kind() const noexcept;
  bool is_leaf() const noexcept { return kind() == Kind::Leaf; }
  const Bgp& bgp() const;
  /// Left operand of And/Opt, or the filtered pattern of Filter.
  const Pattern& left() const;
  const Pattern& right() const;
  const Constraint& constraint() const;

  /// Identity of the underlying node; distinguishes equal-looking subpatterns.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  struct Node;
  explicit Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Algebraic notation: `((?x <p> ?y) OPT (?y <q> ?z)) AND ...`.
std::string to_string(const Pattern& p);
std::size_t opt_count(const Pattern& p);
std::size_t triple_count(const Pattern& p);

VariableSet vars(const TriplePattern& tp);
VariableSet vars(const Bgp& bgp);
VariableSet vars(const Constraint& c);
/// Every variable occurring anywhere in `p`, filter constraints included.
VariableSet vars(const Pattern& p);

// ---------------------------------------------------------------------------
// Mappings and solution sets
// ---------------------------------------------------------------------------

/// A partial function from variables to terms, stored sorted by variable.
class Mapping {
 public:
  using Binding = std::pair<Variable, Term>;
  using const_iterator = std::vector<Binding>::const_iterator;

  Mapping() = default;
  Mapping(std::initializer_list<Binding> bindings);

  /// Binds `v`; throws std::invalid_argument if `v` is already bound to a different term.
  void bind(const Variable& v, const Term& t);
  const Term* get(const Variable& v) const noexcept;
  bool binds(const Variable& v) const noexcept { return get(v) != nullptr; }
  VariableSet domain() const;

  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  const_iterator begin() const noexcept { return bindings_.begin(); }
  const_iterator end() const noexcept { return bindings_.end(); }

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend std::strong_ordering operator<=>(const Mapping&, const Mapping&) = default;

 private:
  friend Mapping merge(const Mapping& a, const Mapping& b);
  std::vector<Binding> bindings_;
};

std::ostream& operator<<(std::ostream& os, const Mapping& m);

/// True iff `a` and `b` agree on every variable both bind.
bool compatible(const Mapping& a, const Mapping& b) noexcept;
/// Union of two compatible mappings.
Mapping merge(const Mapping& a, const Mapping& b);
/// Restriction of `m` to `keep` intersected with its domain.
Mapping restrict(const Mapping& m, const VariableSet& keep);
/// True iff `big` binds every variable of `small` to the same term.
bool extends(const Mapping& big, const Mapping& small) noexcept;

/// A set of mappings. Members are kept sorted and unique, so equality is set equality.
class SolutionSet {
 public:
  using const_iterator = std::vector<Mapping>::const_iterator;

  SolutionSet() = default;
  explicit SolutionSet(std::vector<Mapping> mappings);
  SolutionSet(std::initializer_list<Mapping> mappings);

  /// `{ empty mapping }`, the identity of join.
  static SolutionSet unit();

  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  bool contains(const Mapping& m) const;
  const_iterator begin() const noexcept { return rows_.begin(); }
  const_iterator end() const noexcept { return rows_.end(); }
  const std::vector<Mapping>& mappings() const noexcept { return rows_; }

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  std::vector<Mapping> rows_;
};

std::ostream& operator<<(std::ostream& os, const SolutionSet& s);

SolutionSet join(const SolutionSet& left, const SolutionSet& right);
SolutionSet difference(const SolutionSet& left, const SolutionSet& right);
SolutionSet left_outer_join(const SolutionSet& left, const SolutionSet& right);
SolutionSet set_union(const SolutionSet& a, const SolutionSet& b);
SolutionSet project(const SolutionSet& s, const VariableSet& keep);

Truth eval_constraint(const Mapping& m, const Constraint& c);
SolutionSet filter_solutions(const SolutionSet& s, const Constraint& c);

}  // namespace optplan
