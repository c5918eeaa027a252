#include <doctest.h>

#include "optplan/error.hpp"
#include "optplan/query.hpp"
#include "testkit.hpp"

using namespace optplan;
namespace tk = optplan::testkit;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_query(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TriplePattern tp(PatternTerm s, PatternTerm p, PatternTerm o) { return {std::move(s), std::move(p), std::move(o)}; }

}  // namespace

TEST_CASE("fixture queries parse to the reference patterns") {
  Query q = parse_query(tk::read_fixture("bloggers_join.rq"));
  CHECK_FALSE(q.projection.has_value());
  CHECK(q.pattern == tk::bloggers_join());
  CHECK(q.prefixes.at("foaf") == tk::vocab::kFoaf);

  CHECK(parse_query(tk::read_fixture("bloggers_optional.rq")).pattern == tk::bloggers_optional());
  CHECK(parse_query(tk::read_fixture("bloggers_crossing.rq")).pattern == tk::bloggers_crossing());
  CHECK(output_variables(parse_query(tk::read_fixture("bloggers_optional.rq"))) ==
        VariableSet{Variable("u"), Variable("v"), Variable("x"), Variable("y"), Variable("z")});
}

TEST_CASE("projection, keywords and abbreviations") {
  Query q = parse_query(
      "prefix ex: <http://example.org/>\n"
      "select ?b ?a { ?a a ex:C ; ex:p ?b , ex:o }");
  REQUIRE(q.projection.has_value());
  CHECK(*q.projection == std::vector<Variable>{Variable("b"), Variable("a")});
  Term type = Term::iri(tk::vocab::kRdf + "type");
  Term p = Term::iri(tk::vocab::kEx + "p");
  CHECK(q.pattern == Pattern::leaf({tp(Variable("a"), type, Term::iri(tk::vocab::kEx + "C")),
                                    tp(Variable("a"), p, Variable("b")),
                                    tp(Variable("a"), p, Term::iri(tk::vocab::kEx + "o"))}));
  CHECK(output_variables(q) == VariableSet{Variable("a"), Variable("b")});
}

TEST_CASE("group elements fold to the left") {
  Query q = parse_query(
      "SELECT * WHERE { ?a <http://p> ?b OPTIONAL { ?b <http://p> ?c } ?a <http://q> ?d "
      "FILTER (bound(?c) || ?d = <http://e>) }");
  Pattern a = Pattern::leaf({tp(Variable("a"), Term::iri("http://p"), Variable("b"))});
  Pattern b = Pattern::leaf({tp(Variable("b"), Term::iri("http://p"), Variable("c"))});
  Pattern c = Pattern::leaf({tp(Variable("a"), Term::iri("http://q"), Variable("d"))});
  Constraint cond = Constraint::disj(Constraint::bound(Variable("c")),
                                     Constraint::equals(Variable("d"), Term::iri("http://e")));
  CHECK(q.pattern == Pattern::filter(Pattern::conj(Pattern::opt(a, b), c), cond));

  Query leading = parse_query("SELECT * { OPTIONAL { ?a <http://p> ?b } }");
  CHECK(leading.pattern == Pattern::opt(Pattern::leaf(Bgp{}), Pattern::leaf({tp(Variable("a"), Term::iri("http://p"), Variable("b"))})));
}

TEST_CASE("expression precedence") {
  Query q = parse_query("SELECT * { ?a <http://p> ?b FILTER (!bound(?a) || ?a = ?b && (?b = \"x\")) }");
  Constraint expected = Constraint::disj(
      Constraint::negate(Constraint::bound(Variable("a"))),
      Constraint::conj(Constraint::equals(Variable("a"), Variable("b")),
                       Constraint::equals(Variable("b"), Term::literal("x"))));
  CHECK(q.pattern.constraint() == expected);
}

TEST_CASE("malformed queries are rejected with a position") {
  CHECK(error_line("SELECT * WHERE { }") == 1);
  CHECK(error_line("SELECT * WHERE {\n ?a <http://p> ?b OPTIONAL { } }") == 2);
  CHECK(error_line("SELECT * WHERE { ?a foaf:name ?b }") == 1);
  CHECK(error_line("SELECT * WHERE { _:b <http://p> ?c }") == 1);
  CHECK(error_line("SELECT * WHERE { { ?a <http://p> ?b } UNION { ?a <http://q> ?b } }") == 1);
  CHECK(error_line("SELECT WHERE { ?a <http://p> ?b }") == 1);
  // An unterminated group is reported at its opening brace.
  CHECK(error_line("\nSELECT * WHERE { ?a <http://p> ?b \n\n") == 2);
  CHECK(error_line("SELECT * WHERE { ?a <http://p> ?b FILTER (?a) }") == 1);
}

TEST_CASE("printing and parsing round-trip") {
  for (const char* name : {"bloggers_join.rq", "bloggers_optional.rq", "bloggers_crossing.rq", "nested_opt.rq"}) {
    Query q = parse_query(tk::read_fixture(name));
    Query back = parse_query(to_sparql(q));
    CHECK(back.pattern == q.pattern);
    CHECK(back.projection == q.projection);
  }
  Query projected = parse_query("SELECT ?x { ?x <http://p> \"a\\tb\"@en }");
  Query back = parse_query(to_sparql(projected));
  CHECK(back.pattern == projected.pattern);
  CHECK(back.projection == projected.projection);
}

TEST_CASE("generated patterns survive printing") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed;
    Pattern p = tk::gen_well_designed(cfg);
    CAPTURE(to_string(p));
    Query q{std::nullopt, p, {}};
    CHECK(parse_query(to_sparql(q)).pattern == p);

    Pattern bad = tk::gen_not_well_designed(cfg);
    CHECK(parse_query(to_sparql(Query{std::nullopt, bad, {}})).pattern == bad);
  }
}
