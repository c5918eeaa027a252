#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optplan {

/// An RDF term: IRI, blank node or literal. Equality is purely syntactic.
class Term {
 public:
  enum class Kind : std::uint8_t { Iri, Blank, Literal };

  static Term iri(std::string text);
  static Term blank(std::string label);
  /// A literal carries at most one of `datatype` and `language`.
  static Term literal(std::string lexical, std::string datatype = {}, std::string language = {});

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_blank() const noexcept { return kind_ == Kind::Blank; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }

  /// IRI text, blank node label or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  /// N-Triples encoding: `<iri>`, `_:label`, `"lexical"` with `^^<dt>` or `@lang`.
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string language);

  Kind kind_ = Kind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

std::ostream& operator<<(std::ostream& os, const Term& term);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  /// Throws std::invalid_argument unless subject is an IRI or blank node and predicate an IRI.
  static Triple make(Term subject, Term predicate, Term object);

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

std::ostream& operator<<(std::ostream& os, const Triple& triple);

/// A contiguous run of one of the graph's permutation indexes, iterated as triples.
class TripleRange {
 public:
  class iterator {
   public:
    using value_type = Triple;
    using difference_type = std::ptrdiff_t;
    using reference = const Triple&;
    using pointer = const Triple*;
    using iterator_category = std::forward_iterator_tag;

    iterator() = default;
    iterator(const Triple* base, const std::uint32_t* pos) : base_(base), pos_(pos) {}
    reference operator*() const { return base_[*pos_]; }
    pointer operator->() const { return &base_[*pos_]; }
    iterator& operator++() {
      ++pos_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++pos_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    const Triple* base_ = nullptr;
    const std::uint32_t* pos_ = nullptr;
  };

  TripleRange() = default;
  TripleRange(const Triple* base, std::span<const std::uint32_t> ids) : base_(base), ids_(ids) {}

  iterator begin() const { return {base_, ids_.data()}; }
  iterator end() const { return {base_, ids_.data() + ids_.size()}; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

 private:
  const Triple* base_ = nullptr;
  std::span<const std::uint32_t> ids_;
};

/// An immutable set of triples with SPO, POS and OSP permutation indexes.
///
/// Every combination of bound positions is a prefix of one of the three
/// permutations, so every lookup is a single binary-searched range.
class Graph {
 public:
  Graph();
  /// Duplicates collapse.
  explicit Graph(std::vector<Triple> triples);

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  /// All triples in SPO order.
  std::span<const Triple> triples() const noexcept { return triples_; }
  bool contains(const Triple& triple) const;

  /// Triples matching every bound position; all-unbound yields every triple.
  TripleRange lookup(const std::optional<Term>& subject, const std::optional<Term>& predicate,
                     const std::optional<Term>& object) const;
  /// Pointer form of lookup; nullptr means unbound.
  TripleRange lookup(const Term* subject, const Term* predicate, const Term* object) const;
  /// Same as `lookup(...).size()`, in logarithmic time.
  std::size_t count(const std::optional<Term>& subject, const std::optional<Term>& predicate,
                    const std::optional<Term>& object) const {
    return lookup(subject, predicate, object).size();
  }
  std::size_t count(const Term* subject, const Term* predicate, const Term* object) const {
    return lookup(subject, predicate, object).size();
  }

  /// Set equality; the indexes are derived from the sorted triples.
  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  std::vector<Triple> triples_;
  std::vector<std::uint32_t> spo_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::uint32_t> osp_;
};

/// Parses the N-Triples subset: IRIs, `_:` blank nodes, literals with `^^<dt>` or `@lang`, `#` comments.
/// Throws ParseError on the first malformed line.
Graph parse_ntriples(std::istream& in);
Graph parse_ntriples(std::string_view text);

/// One line per triple in SPO order; parse_ntriples reads it back to the same graph.
void write_ntriples(std::ostream& out, const Graph& graph);
std::string to_ntriples(const Graph& graph);

}  // namespace optplan

template <>
struct std::hash<optplan::Term> {
  std::size_t operator()(const optplan::Term& term) const noexcept;
};
