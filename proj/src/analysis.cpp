#include "optplan/analysis.hpp"

#include <map>

namespace optplan {

std::string Violation::describe() const {
  switch (kind) {
    case Kind::UnsafeFilter:
      return "unsafe filter: ?" + variable.name + " does not occur in the filtered pattern " + to_string(subpattern);
    case Kind::OptVariable:
      return "?" + variable.name + " occurs in the optional side and outside of " + to_string(subpattern) +
             " but not in its mandatory side";
  }
  return {};
}

NotWellDesigned::NotWellDesigned(Violation v)
    : std::runtime_error("pattern is not well-designed: " + v.describe()), violation_(std::move(v)) {}

namespace {

using Occurrences = std::map<Variable, std::size_t>;

void count(const PatternTerm& t, Occurrences& out) {
  if (const auto* v = std::get_if<Variable>(&t)) ++out[*v];
}

void count(const Constraint& c, Occurrences& out) {
  switch (c.kind()) {
    case Constraint::Kind::Bound:
    case Constraint::Kind::ConstEq:
      ++out[c.variable()];
      break;
    case Constraint::Kind::VarEq:
      ++out[c.variable()];
      ++out[c.other_variable()];
      break;
    case Constraint::Kind::Not:
      count(c.left(), out);
      break;
    default:
      count(c.left(), out);
      count(c.right(), out);
  }
}

void count(const Pattern& p, Occurrences& out) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf:
      for (const auto& tp : p.bgp().patterns) {
        count(tp.subject, out);
        count(tp.predicate, out);
        count(tp.object, out);
      }
      break;
    case Pattern::Kind::Filter:
      count(p.left(), out);
      count(p.constraint(), out);
      break;
    default:
      count(p.left(), out);
      count(p.right(), out);
  }
}

std::optional<Violation> unsafe_filter(const Pattern& filter) {
  VariableSet inner = vars(filter.left());
  for (const auto& v : vars(filter.constraint()))
    if (!inner.contains(v)) return Violation{Violation::Kind::UnsafeFilter, filter, v};
  return std::nullopt;
}

std::optional<Violation> search(const Pattern& p, const Occurrences& total) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf:
      return std::nullopt;
    case Pattern::Kind::Filter:
      if (auto v = search(p.left(), total)) return v;
      return unsafe_filter(p);
    case Pattern::Kind::And:
      if (auto v = search(p.left(), total)) return v;
      return search(p.right(), total);
    case Pattern::Kind::Opt: {
      if (auto v = search(p.left(), total)) return v;
      if (auto v = search(p.right(), total)) return v;
      Occurrences inside;
      count(p, inside);
      VariableSet mandatory = vars(p.left());
      for (const auto& v : vars(p.right())) {
        bool outside = total.at(v) > inside.at(v);
        if (outside && !mandatory.contains(v)) return Violation{Violation::Kind::OptVariable, p, v};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool safe(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf:
      return true;
    case Pattern::Kind::Filter:
      return safe(p.left()) && !unsafe_filter(p);
    default:
      return safe(p.left()) && safe(p.right());
  }
}

bool has_opt(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: return false;
    case Pattern::Kind::Opt: return true;
    case Pattern::Kind::Filter: return has_opt(p.left());
    case Pattern::Kind::And: return has_opt(p.left()) || has_opt(p.right());
  }
  return false;
}

}  // namespace

bool is_safe(const Pattern& p) { return safe(p); }

std::optional<Violation> find_violation(const Pattern& p) {
  Occurrences total;
  count(p, total);
  return search(p, total);
}

bool is_well_designed(const Pattern& p) { return !find_violation(p).has_value(); }

bool is_opt_normal_form(const Pattern& p) {
  if (!has_opt(p)) return true;
  return p.kind() == Pattern::Kind::Opt && is_opt_normal_form(p.left()) && is_opt_normal_form(p.right());
}

}  // namespace optplan
