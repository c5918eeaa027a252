#include "optplan/bgp_engine.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace optplan {

namespace {

// A triple pattern with variables replaced by slot numbers.
struct CompiledPattern {
  struct Position {
    const Term* constant = nullptr;
    int slot = -1;
  };
  std::array<Position, 3> positions;
};

class Matcher {
 public:
  Matcher(const Graph& graph, const Bgp& bgp) : graph_(graph) {
    std::vector<Variable> names;
    auto slot_of = [&](const Variable& v) {
      auto it = std::find(names.begin(), names.end(), v);
      if (it != names.end()) return static_cast<int>(it - names.begin());
      names.push_back(v);
      return static_cast<int>(names.size() - 1);
    };
    for (const auto& tp : bgp.patterns) {
      CompiledPattern cp;
      const PatternTerm* parts[] = {&tp.subject, &tp.predicate, &tp.object};
      for (int i = 0; i < 3; ++i) {
        if (const auto* v = std::get_if<Variable>(parts[i])) {
          cp.positions[i].slot = slot_of(*v);
        } else {
          cp.positions[i].constant = &std::get<Term>(*parts[i]);
        }
      }
      patterns_.push_back(cp);
    }
    variables_ = std::move(names);
    values_.assign(variables_.size(), nullptr);
    done_.assign(patterns_.size(), false);
  }

  SolutionSet run() {
    search(0);
    return SolutionSet(std::move(results_));
  }

 private:
  const Term* resolve(const CompiledPattern::Position& pos) const {
    return pos.constant != nullptr ? pos.constant : values_[pos.slot];
  }

  TripleRange candidates(const CompiledPattern& cp) const {
    return graph_.lookup(resolve(cp.positions[0]), resolve(cp.positions[1]), resolve(cp.positions[2]));
  }

  void search(std::size_t matched) {
    if (matched == patterns_.size()) {
      Mapping m;
      for (std::size_t i = 0; i < variables_.size(); ++i) m.bind(variables_[i], *values_[i]);
      results_.push_back(std::move(m));
      return;
    }

    std::size_t best = patterns_.size();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (done_[i]) continue;
      std::size_t n = candidates(patterns_[i]).size();
      if (n < best_count) {
        best = i;
        best_count = n;
      }
      if (n == 0) return;
    }

    const CompiledPattern& cp = patterns_[best];
    done_[best] = true;
    for (const Triple& t : candidates(cp)) {
      const Term* parts[] = {&t.subject, &t.predicate, &t.object};
      std::array<int, 3> newly_bound{};
      std::size_t n_new = 0;
      bool consistent = true;
      for (int i = 0; i < 3 && consistent; ++i) {
        int slot = cp.positions[i].slot;
        if (slot < 0) continue;
        if (values_[slot] == nullptr) {
          values_[slot] = parts[i];
          newly_bound[n_new++] = slot;
        } else if (*values_[slot] != *parts[i]) {
          // Only reachable when a variable repeats within this pattern.
          consistent = false;
        }
      }
      if (consistent) search(matched + 1);
      for (std::size_t k = 0; k < n_new; ++k) values_[newly_bound[k]] = nullptr;
    }
    done_[best] = false;
  }

  const Graph& graph_;
  std::vector<CompiledPattern> patterns_;
  std::vector<Variable> variables_;
  std::vector<const Term*> values_;
  std::vector<bool> done_;
  std::vector<Mapping> results_;
};

}  // namespace

SolutionSet reference_evaluate(const Graph& graph, const Bgp& bgp) { return Matcher(graph, bgp).run(); }

SolutionSet match_by_scan(const Graph& graph, const TriplePattern& tp) {
  std::vector<Mapping> out;
  for (const Triple& t : graph.triples()) {
    const PatternTerm* parts[] = {&tp.subject, &tp.predicate, &tp.object};
    const Term* values[] = {&t.subject, &t.predicate, &t.object};
    Mapping m;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (const auto* v = std::get_if<Variable>(parts[i])) {
        const Term* prior = m.get(*v);
        if (prior == nullptr) m.bind(*v, *values[i]);
        else ok = *prior == *values[i];
      } else {
        ok = std::get<Term>(*parts[i]) == *values[i];
      }
    }
    if (ok) out.push_back(std::move(m));
  }
  return SolutionSet(std::move(out));
}

SolutionSet naive_evaluate(const Graph& graph, const Bgp& bgp) {
  SolutionSet acc = SolutionSet::unit();
  for (const auto& tp : bgp.patterns) acc = join(acc, match_by_scan(graph, tp));
  return acc;
}

EngineRegistry EngineRegistry::with_builtins() {
  EngineRegistry r;
  r.add("reference", [] { return std::make_unique<ReferenceEngine>(); });
  r.add("naive", [] { return std::make_unique<NaiveEngine>(); });
  return r;
}

void EngineRegistry::add(std::string name, Factory factory) { factories_[std::move(name)] = std::move(factory); }

bool EngineRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

std::unique_ptr<BgpEngine> EngineRegistry::create(std::string_view name) const {
  auto it = factories_.find(name);
  if (it == factories_.end()) throw std::out_of_range("unknown BGP engine '" + std::string(name) + "'");
  return it->second();
}

std::vector<std::string> EngineRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, factory] : factories_) out.push_back(name);
  return out;
}

}  // namespace optplan
