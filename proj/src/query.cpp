#include "optplan/query.hpp"

#include <cctype>
#include <istream>
#include <iterator>
#include <sstream>

#include "optplan/error.hpp"
#include "text_util.hpp"

namespace optplan {

namespace {

constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class Tok {
  End,
  Iri,          // <...>, text is the IRI
  PrefixedName, // text is "prefix:local"
  Var,          // text is the name without ? or $
  String,       // text is the unescaped lexical form
  LangTag,      // text excludes '@'
  DoubleCaret,
  Blank,        // _:label or [
  Word,         // bare identifier (keywords, `a`)
  Punct,        // { } ( ) . ; , = ! * && ||
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (c & 0x80); }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || (c & 0x80);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;

    char c = text_[pos_];
    if (c == '<') {
      advance();
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '>') {
        char d = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '<' || d == '"' || d == '{' || d == '}')
          fail(tok, "unterminated IRI");
        advance();
      }
      if (pos_ >= text_.size()) fail(tok, "unterminated IRI");
      tok.kind = Tok::Iri;
      tok.text = std::string(text_.substr(start, pos_ - start));
      advance();
      if (tok.text.empty()) fail(tok, "empty IRI");
      return tok;
    }
    if (c == '?' || c == '$') {
      advance();
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) advance();
      if (pos_ == start) fail(tok, "empty variable name");
      tok.kind = Tok::Var;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      advance();
      std::string value;
      for (;;) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') fail(tok, "unterminated string literal");
        char d = text_[pos_];
        if (d == quote) {
          advance();
          break;
        }
        if (d == '\\') {
          std::size_t before = pos_;
          ++pos_;
          std::string error;
          if (!detail::read_escape(text_, pos_, value, error)) {
            pos_ = before;
            Token at{Tok::End, {}, line_, column_};
            fail(at, error);
          }
          column_ += pos_ - before;
          continue;
        }
        value.push_back(d);
        advance();
      }
      tok.kind = Tok::String;
      tok.text = std::move(value);
      return tok;
    }
    if (c == '@') {
      advance();
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
        advance();
      if (pos_ == start) fail(tok, "empty language tag");
      tok.kind = Tok::LangTag;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '^') {
      advance();
      if (pos_ >= text_.size() || text_[pos_] != '^') fail(tok, "expected '^^'");
      advance();
      tok.kind = Tok::DoubleCaret;
      return tok;
    }
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
      advance();
      advance();
      std::size_t start = pos_;
      while (pos_ < text_.size() && detail::is_blank_label_char(text_[pos_])) advance();
      tok.kind = Tok::Blank;
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '[') {
      advance();
      tok.kind = Tok::Blank;
      return tok;
    }
    if ((c == '&' || c == '|') && pos_ + 1 < text_.size() && text_[pos_ + 1] == c) {
      advance();
      advance();
      tok.kind = Tok::Punct;
      tok.text = std::string(2, c);
      return tok;
    }
    if (std::string_view("{}().;,=!*").find(c) != std::string_view::npos) {
      advance();
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      return tok;
    }
    if (is_name_start(c) || c == ':') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '.')) advance();
      // A trailing '.' terminates the triple; it is not part of the name.
      while (pos_ > start && text_[pos_ - 1] == '.') retreat();
      if (pos_ < text_.size() && text_[pos_] == ':') {
        advance();
        while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '.' || text_[pos_] == ':' ||
                                       text_[pos_] == '%'))
          advance();
        while (text_[pos_ - 1] == '.') retreat();
        tok.kind = Tok::PrefixedName;
      } else {
        tok.kind = Tok::Word;
      }
      tok.text = std::string(text_.substr(start, pos_ - start));
      return tok;
    }
    fail(tok, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(message, at.line, at.column);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // Only used to give back '.' characters, which never cross a line.
  void retreat() {
    --pos_;
    --column_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

  Query parse() {
    Query q;
    while (is_word("PREFIX")) {
      shift();
      if (tok_.kind != Tok::PrefixedName || tok_.text.back() != ':') fail("expected prefix label such as 'foaf:'");
      std::string label = tok_.text.substr(0, tok_.text.size() - 1);
      shift();
      if (tok_.kind != Tok::Iri) fail("expected IRI after prefix label");
      q.prefixes[label] = tok_.text;
      shift();
    }
    prefixes_ = &q.prefixes;

    if (!is_word("SELECT")) fail("expected SELECT");
    shift();
    if (is_punct("*")) {
      shift();
    } else {
      std::vector<Variable> projection;
      while (tok_.kind == Tok::Var) {
        projection.emplace_back(tok_.text);
        shift();
      }
      if (projection.empty()) fail("expected '*' or at least one variable after SELECT");
      q.projection = std::move(projection);
    }
    if (is_word("WHERE")) shift();
    if (!is_punct("{")) fail("expected '{'");
    q.pattern = group();
    if (tok_.kind != Tok::End) fail("unexpected content after query");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { Lexer::fail(tok_, message); }

  void shift() { tok_ = lexer_.next(); }
  bool is_word(std::string_view w) const { return tok_.kind == Tok::Word && iequals(tok_.text, w); }
  bool is_punct(std::string_view p) const { return tok_.kind == Tok::Punct && tok_.text == p; }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    shift();
  }

  bool at_term_start() const {
    switch (tok_.kind) {
      case Tok::Iri:
      case Tok::PrefixedName:
      case Tok::Var:
      case Tok::String:
      case Tok::Blank:
        return true;
      case Tok::Word:
        return !is_word("OPTIONAL") && !is_word("FILTER") && !is_word("UNION") && !is_word("GRAPH") &&
               !is_word("MINUS") && !is_word("BIND") && !is_word("VALUES") && !is_word("SERVICE");
      default:
        return false;
    }
  }

  Pattern group() {
    Token open = tok_;
    expect_punct("{");
    std::optional<Pattern> acc;
    auto base = [&]() { return acc ? *acc : Pattern::leaf(Bgp{}); };
    auto combine = [&](Pattern element) { acc = acc ? Pattern::conj(*acc, std::move(element)) : std::move(element); };

    while (!is_punct("}")) {
      if (tok_.kind == Tok::End) Lexer::fail(open, "unterminated group");
      if (is_punct("{")) {
        combine(group());
      } else if (is_word("OPTIONAL")) {
        shift();
        if (!is_punct("{")) fail("expected '{' after OPTIONAL");
        Pattern right = group();
        acc = Pattern::opt(base(), std::move(right));
      } else if (is_word("FILTER")) {
        shift();
        Constraint c = unary();
        acc = Pattern::filter(base(), std::move(c));
      } else if (is_punct(".")) {
        shift();
      } else if (is_word("UNION")) {
        fail("UNION is not supported");
      } else if (at_term_start()) {
        combine(Pattern::leaf(triples_block()));
      } else {
        fail("unexpected token in group");
      }
    }
    shift();
    if (!acc) Lexer::fail(open, "empty group");
    return *acc;
  }

  Bgp triples_block() {
    Bgp bgp;
    for (;;) {
      PatternTerm subject = pattern_term();
      for (;;) {
        PatternTerm predicate = verb();
        for (;;) {
          bgp.patterns.push_back(TriplePattern{subject, predicate, pattern_term()});
          if (!is_punct(",")) break;
          shift();
        }
        if (!is_punct(";")) break;
        shift();
        if (is_punct(".") || is_punct("}")) break;
      }
      if (!is_punct(".")) break;
      shift();
      if (!at_term_start()) break;
    }
    return bgp;
  }

  PatternTerm verb() {
    if (tok_.kind == Tok::Word && tok_.text == "a") {
      shift();
      return Term::iri(kRdfType);
    }
    return pattern_term();
  }

  PatternTerm pattern_term() {
    switch (tok_.kind) {
      case Tok::Var: {
        Variable v(tok_.text);
        shift();
        return v;
      }
      case Tok::Blank:
        fail("blank nodes are not allowed in query patterns");
      default:
        return term();
    }
  }

  Term term() {
    switch (tok_.kind) {
      case Tok::Iri: {
        Term t = Term::iri(tok_.text);
        shift();
        return t;
      }
      case Tok::PrefixedName: {
        Term t = Term::iri(expand(tok_));
        shift();
        return t;
      }
      case Tok::String: {
        std::string lexical = tok_.text;
        shift();
        if (tok_.kind == Tok::LangTag) {
          std::string lang = tok_.text;
          shift();
          return Term::literal(std::move(lexical), {}, std::move(lang));
        }
        if (tok_.kind == Tok::DoubleCaret) {
          shift();
          if (tok_.kind == Tok::Iri) {
            Term t = Term::literal(std::move(lexical), tok_.text);
            shift();
            return t;
          }
          if (tok_.kind == Tok::PrefixedName) {
            Term t = Term::literal(std::move(lexical), expand(tok_));
            shift();
            return t;
          }
          fail("expected datatype IRI after '^^'");
        }
        return Term::literal(std::move(lexical));
      }
      case Tok::Blank:
        fail("blank nodes are not allowed in query patterns");
      case Tok::End:
        fail("unexpected end of input, expected a term");
      default:
        fail("expected an IRI, prefixed name, literal or variable");
    }
  }

  std::string expand(const Token& pname) const {
    auto colon = pname.text.find(':');
    std::string label = pname.text.substr(0, colon);
    auto it = prefixes_->find(label);
    if (it == prefixes_->end()) Lexer::fail(pname, "undeclared prefix '" + label + ":'");
    return it->second + pname.text.substr(colon + 1);
  }

  // Expr := And ('||' And)* ; And := Unary ('&&' Unary)*
  Constraint expression() {
    Constraint c = conjunction();
    while (is_punct("||")) {
      shift();
      c = Constraint::disj(std::move(c), conjunction());
    }
    return c;
  }

  Constraint conjunction() {
    Constraint c = unary();
    while (is_punct("&&")) {
      shift();
      c = Constraint::conj(std::move(c), unary());
    }
    return c;
  }

  Constraint unary() {
    if (is_punct("!")) {
      shift();
      return Constraint::negate(unary());
    }
    if (is_punct("(")) {
      shift();
      Constraint c = expression();
      expect_punct(")");
      return c;
    }
    if (is_word("BOUND")) {
      shift();
      expect_punct("(");
      if (tok_.kind != Tok::Var) fail("BOUND expects a variable");
      Variable v(tok_.text);
      shift();
      expect_punct(")");
      return Constraint::bound(std::move(v));
    }
    if (tok_.kind == Tok::Var) {
      Variable v(tok_.text);
      shift();
      expect_punct("=");
      if (tok_.kind == Tok::Var) {
        Variable w(tok_.text);
        shift();
        return Constraint::equals(std::move(v), std::move(w));
      }
      return Constraint::equals(std::move(v), term());
    }
    fail("expected BOUND(?var), '?var = ...', '!' or '('");
  }

  Lexer lexer_;
  Token tok_;
  const std::map<std::string, std::string>* prefixes_ = nullptr;
};

void append_elements(const Pattern& p, std::vector<std::string>& out) {
  switch (p.kind()) {
    case Pattern::Kind::Leaf: {
      std::string block;
      for (const auto& tp : p.bgp().patterns) {
        if (!block.empty()) block += " . ";
        block += to_string(tp);
      }
      if (!block.empty()) out.push_back(std::move(block));
      break;
    }
    case Pattern::Kind::And:
      append_elements(p.left(), out);
      out.push_back(to_sparql_group(p.right()));
      break;
    case Pattern::Kind::Opt:
      append_elements(p.left(), out);
      out.push_back("OPTIONAL " + to_sparql_group(p.right()));
      break;
    case Pattern::Kind::Filter: {
      std::string expr = to_string(p.constraint());
      if (expr.front() != '(') expr = "(" + expr + ")";
      append_elements(p.left(), out);
      out.push_back("FILTER" + expr);
      break;
    }
  }
}

}  // namespace

VariableSet output_variables(const Query& q) {
  if (!q.projection) return vars(q.pattern);
  return VariableSet(q.projection->begin(), q.projection->end());
}

Query parse_query(std::string_view text) { return Parser(text).parse(); }

Query parse_query(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_query(text);
}

std::string to_sparql_group(const Pattern& p) {
  std::vector<std::string> elements;
  append_elements(p, elements);
  std::string out = "{";
  for (const auto& e : elements) out += " " + e;
  return out + " }";
}

std::string to_sparql(const Query& q) {
  std::string out = "SELECT";
  if (!q.projection) {
    out += " *";
  } else {
    for (const auto& v : *q.projection) out += " ?" + v.name;
  }
  return out + " WHERE " + to_sparql_group(q.pattern);
}

}  // namespace optplan
