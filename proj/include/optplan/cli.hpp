#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "optplan/algebra.hpp"

namespace optplan::cli {

enum class OutputFormat { Tsv, Json };

/// Deterministic rendering of a solution set: columns are `columns` in sorted order, rows
/// are sorted by their tuple of serialized cells, unbound cells are empty (TSV) or absent (JSON).
std::string format_results(const SolutionSet& solutions, const VariableSet& columns, OutputFormat format);

/// Runs the command line `args` (without the program name). Returns the exit status:
/// 0 on success, 1 on usage, load or parse errors, 2 for patterns that are not
/// well-designed under `--check` or strict evaluation.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace optplan::cli
