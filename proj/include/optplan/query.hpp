#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optplan/algebra.hpp"

namespace optplan {

/// A parsed `SELECT ... WHERE { ... }` query.
struct Query {
  /// Projected variables in source order; `nullopt` for `SELECT *`.
  std::optional<std::vector<Variable>> projection;
  Pattern pattern = Pattern::leaf(Bgp{});
  /// Prefix label (without the colon) to namespace IRI.
  std::map<std::string, std::string> prefixes;
};

/// Variables the query outputs: the projection list, or every pattern variable for `SELECT *`.
VariableSet output_variables(const Query& q);

/// Parses the SELECT subset: PREFIX declarations, SELECT * or a variable list, and a WHERE
/// group of triple blocks, nested groups, OPTIONAL groups and FILTERs.
///
/// Group elements fold left to right: a triple block or nested group `E` turns the
/// accumulated pattern `A` into `A AND E`, `OPTIONAL G` into `A OPT G` and `FILTER (C)`
/// into `A FILTER C`. A group that starts with OPTIONAL or FILTER begins from the empty BGP.
///
/// Throws ParseError on lexical or syntax errors, undeclared prefixes, blank nodes in
/// patterns and empty groups.
Query parse_query(std::string_view text);
Query parse_query(std::istream& in);

/// A group `{ ... }` that parse_query reads back to exactly `p`. IRIs are written in full.
std::string to_sparql_group(const Pattern& p);
/// A complete query text that parse_query reads back to an equal Query (prefixes excluded).
std::string to_sparql(const Query& q);

}  // namespace optplan
