#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "optplan/algebra.hpp"

namespace optplan {

/// Why a pattern is not well-designed.
struct Violation {
  enum class Kind { UnsafeFilter, OptVariable };

  Kind kind;
  /// The offending FILTER or OPT subpattern.
  Pattern subpattern;
  /// For UnsafeFilter: a constraint variable missing from the filtered pattern.
  /// For OptVariable: a variable inside the OPT's right side and outside the OPT but absent from its left side.
  Variable variable;

  std::string describe() const;
};

/// Thrown by the strict evaluation pipeline for patterns outside the well-designed fragment.
class NotWellDesigned : public std::runtime_error {
 public:
  explicit NotWellDesigned(Violation v);
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

/// Patterns built from AND, OPT and FILTER only; the AST has no UNION, so always true.
constexpr bool is_union_free(const Pattern&) noexcept { return true; }

/// Every `Q FILTER C` satisfies vars(C) ⊆ vars(Q).
bool is_safe(const Pattern& p);

/// The first violation in post-order (left before right, children before parents), or nullopt.
/// Variable occurrences include filter constraints.
std::optional<Violation> find_violation(const Pattern& p);
bool is_well_designed(const Pattern& p);

/// No OPT below an AND or FILTER.
bool is_opt_normal_form(const Pattern& p);

}  // namespace optplan
