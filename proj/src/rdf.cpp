#include "optplan/rdf.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "optplan/error.hpp"
#include "text_util.hpp"

namespace optplan {

Term::Term(Kind kind, std::string value, std::string datatype, std::string language)
    : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)), language_(std::move(language)) {}

Term Term::iri(std::string text) {
  if (text.empty()) throw std::invalid_argument("IRI must not be empty");
  return Term(Kind::Iri, std::move(text), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw std::invalid_argument("blank node label must not be empty");
  return Term(Kind::Blank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype, std::string language) {
  if (!datatype.empty() && !language.empty())
    throw std::invalid_argument("literal cannot have both a datatype and a language tag");
  return Term(Kind::Literal, std::move(lexical), std::move(datatype), std::move(language));
}

std::string Term::to_ntriples() const {
  switch (kind_) {
    case Kind::Iri:
      return "<" + value_ + ">";
    case Kind::Blank:
      return "_:" + value_;
    case Kind::Literal: {
      std::string out = "\"" + detail::escape_literal(value_) + "\"";
      if (!datatype_.empty()) out += "^^<" + datatype_ + ">";
      if (!language_.empty()) out += "@" + language_;
      return out;
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << term.to_ntriples(); }

Triple Triple::make(Term subject, Term predicate, Term object) {
  if (subject.is_literal()) throw std::invalid_argument("triple subject cannot be a literal");
  if (!predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

std::ostream& operator<<(std::ostream& os, const Triple& triple) {
  return os << triple.subject << ' ' << triple.predicate << ' ' << triple.object << " .";
}

namespace {

// Positions of a triple under one permutation.
using Projection = const Term& (*)(const Triple&);
const Term& subject_of(const Triple& t) { return t.subject; }
const Term& predicate_of(const Triple& t) { return t.predicate; }
const Term& object_of(const Triple& t) { return t.object; }

struct Permutation {
  Projection first, second, third;
};

constexpr Permutation kSpo{subject_of, predicate_of, object_of};
constexpr Permutation kPos{predicate_of, object_of, subject_of};
constexpr Permutation kOsp{object_of, subject_of, predicate_of};

std::vector<std::uint32_t> build_index(const std::vector<Triple>& triples, const Permutation& perm) {
  std::vector<std::uint32_t> ids(triples.size());
  std::iota(ids.begin(), ids.end(), 0u);
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Triple& x = triples[a];
    const Triple& y = triples[b];
    if (auto c = perm.first(x) <=> perm.first(y); c != 0) return c < 0;
    if (auto c = perm.second(x) <=> perm.second(y); c != 0) return c < 0;
    return perm.third(x) < perm.third(y);
  });
  return ids;
}

// Range of `index` whose first `key.size()` permuted positions equal `key`.
std::span<const std::uint32_t> prefix_range(const std::vector<Triple>& triples,
                                            const std::vector<std::uint32_t>& index,
                                            const Permutation& perm,
                                            std::initializer_list<const Term*> key) {
  auto compare = [&](std::uint32_t id) {
    const Triple& t = triples[id];
    const Projection parts[] = {perm.first, perm.second, perm.third};
    std::size_t i = 0;
    for (const Term* k : key) {
      if (auto c = parts[i++](t) <=> *k; c != 0) return c;
    }
    return std::strong_ordering::equal;
  };
  auto lo = std::partition_point(index.begin(), index.end(), [&](std::uint32_t id) { return compare(id) < 0; });
  auto hi = std::partition_point(lo, index.end(), [&](std::uint32_t id) { return compare(id) == 0; });
  return {index.data() + (lo - index.begin()), static_cast<std::size_t>(hi - lo)};
}

}  // namespace

Graph::Graph() = default;

Graph::Graph(std::vector<Triple> triples) : triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  spo_.resize(triples_.size());
  std::iota(spo_.begin(), spo_.end(), 0u);
  pos_ = build_index(triples_, kPos);
  osp_ = build_index(triples_, kOsp);
}

bool Graph::contains(const Triple& triple) const {
  return std::binary_search(triples_.begin(), triples_.end(), triple);
}

TripleRange Graph::lookup(const std::optional<Term>& s, const std::optional<Term>& p,
                          const std::optional<Term>& o) const {
  return lookup(s ? &*s : nullptr, p ? &*p : nullptr, o ? &*o : nullptr);
}

TripleRange Graph::lookup(const Term* s, const Term* p, const Term* o) const {
  std::span<const std::uint32_t> ids;
  if (s && p && o) {
    ids = prefix_range(triples_, spo_, kSpo, {s, p, o});
  } else if (s && p) {
    ids = prefix_range(triples_, spo_, kSpo, {s, p});
  } else if (p && o) {
    ids = prefix_range(triples_, pos_, kPos, {p, o});
  } else if (o && s) {
    ids = prefix_range(triples_, osp_, kOsp, {o, s});
  } else if (s) {
    ids = prefix_range(triples_, spo_, kSpo, {s});
  } else if (p) {
    ids = prefix_range(triples_, pos_, kPos, {p});
  } else if (o) {
    ids = prefix_range(triples_, osp_, kOsp, {o});
  } else {
    ids = spo_;
  }
  return TripleRange(triples_.data(), ids);
}

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_no_, pos_ + 1); }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }

  void skip_ws() {
    while (!at_end() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_iri() {
    expect('<');
    std::size_t start = pos_;
    while (!at_end() && line_[pos_] != '>') {
      char c = line_[pos_];
      if (c == ' ' || c == '\t' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`' || c == '\\')
        fail(std::string("invalid character '") + c + "' in IRI");
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI");
    std::string text(line_.substr(start, pos_ - start));
    ++pos_;
    if (text.empty()) fail("empty IRI");
    return text;
  }

  std::string read_blank_label() {
    expect('_');
    expect(':');
    std::size_t start = pos_;
    while (!at_end() && detail::is_blank_label_char(line_[pos_])) ++pos_;
    // A label may not end with '.', which is the statement terminator.
    while (pos_ > start && line_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return std::string(line_.substr(start, pos_ - start));
  }

  Term read_literal() {
    std::size_t quote_col = pos_;
    expect('"');
    std::string lexical;
    for (;;) {
      if (at_end()) {
        pos_ = quote_col;
        fail("unterminated literal");
      }
      char c = line_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lexical.push_back(c);
        continue;
      }
      std::size_t esc_col = pos_ - 1;
      std::string error;
      if (!detail::read_escape(line_, pos_, lexical, error)) {
        pos_ = esc_col;
        fail(error);
      }
    }
    if (peek() == '^') {
      ++pos_;
      expect('^');
      return Term::literal(std::move(lexical), read_iri());
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
      if (pos_ == start) fail("empty language tag");
      return Term::literal(std::move(lexical), {}, std::string(line_.substr(start, pos_ - start)));
    }
    return Term::literal(std::move(lexical));
  }

  Term read_term(const char* position) {
    skip_ws();
    switch (peek()) {
      case '<':
        return Term::iri(read_iri());
      case '_':
        return Term::blank(read_blank_label());
      case '"':
        return read_literal();
      case '\0':
        fail(std::string("missing ") + position);
      default:
        fail(std::string("unexpected character '") + peek() + "' at " + position);
    }
  }

  Triple read_statement() {
    std::size_t subject_col = (skip_ws(), pos_);
    Term s = read_term("subject");
    if (s.is_literal()) {
      pos_ = subject_col;
      fail("literal in subject position");
    }
    std::size_t predicate_col = (skip_ws(), pos_);
    Term p = read_term("predicate");
    if (!p.is_iri()) {
      pos_ = predicate_col;
      fail("predicate must be an IRI");
    }
    Term o = read_term("object");
    skip_ws();
    expect('.');
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content after '.'");
    return Triple{std::move(s), std::move(p), std::move(o)};
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

bool blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

Graph parse_ntriples(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    triples.push_back(LineCursor(line, line_no).read_statement());
  }
  return Graph(std::move(triples));
}

Graph parse_ntriples(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in);
}

void write_ntriples(std::ostream& out, const Graph& graph) {
  for (const Triple& t : graph.triples()) out << t << '\n';
}

std::string to_ntriples(const Graph& graph) {
  std::ostringstream out;
  write_ntriples(out, graph);
  return out.str();
}

}  // namespace optplan

std::size_t std::hash<optplan::Term>::operator()(const optplan::Term& term) const noexcept {
  std::size_t h = std::hash<std::string>{}(term.value());
  h ^= static_cast<std::size_t>(term.kind()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  if (!term.datatype().empty()) h ^= std::hash<std::string>{}(term.datatype()) + (h << 6) + (h >> 2);
  if (!term.language().empty()) h ^= std::hash<std::string>{}(term.language()) + (h << 6) + (h >> 2);
  return h;
}
