#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "optplan/algebra.hpp"
#include "optplan/rdf.hpp"

namespace optplan {

/// Anything that answers basic graph patterns. The evaluator treats engines as
/// black boxes: graph and BGP in, the full solution set out.
///
/// Implementations must return exactly the join of the BGP's triple-pattern
/// matches (homomorphism semantics, so distinct variables may share a term),
/// must not mutate the graph, and must allow concurrent calls.
class BgpEngine {
 public:
  virtual ~BgpEngine() = default;
  virtual std::string_view name() const = 0;
  virtual SolutionSet evaluate(const Graph& graph, const Bgp& bgp) const = 0;
};

/// Backtracking matcher. At each step it picks the unmatched triple pattern with the
/// fewest candidate triples under the current bindings (ties by source order).
SolutionSet reference_evaluate(const Graph& graph, const Bgp& bgp);

/// Join of per-pattern full scans, in source order. Used as a differential oracle.
SolutionSet naive_evaluate(const Graph& graph, const Bgp& bgp);

/// All mappings μ with dom(μ) = vars(tp) and μ(tp) ∈ graph, by full scan.
SolutionSet match_by_scan(const Graph& graph, const TriplePattern& tp);

class ReferenceEngine final : public BgpEngine {
 public:
  std::string_view name() const override { return "reference"; }
  SolutionSet evaluate(const Graph& graph, const Bgp& bgp) const override { return reference_evaluate(graph, bgp); }
};

class NaiveEngine final : public BgpEngine {
 public:
  std::string_view name() const override { return "naive"; }
  SolutionSet evaluate(const Graph& graph, const Bgp& bgp) const override { return naive_evaluate(graph, bgp); }
};

/// Name-to-factory table of engines.
class EngineRegistry {
 public:
  using Factory = std::function<std::unique_ptr<BgpEngine>()>;

  /// A registry holding `reference` and `naive`.
  static EngineRegistry with_builtins();

  /// Replaces any engine already registered under `name`.
  void add(std::string name, Factory factory);
  bool contains(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  std::unique_ptr<BgpEngine> create(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

}  // namespace optplan
