#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "optplan/cli.hpp"
#include "testkit.hpp"

namespace tk = optplan::testkit;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = {}) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int status = optplan::cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

const std::string kData = tk::fixture_path("bloggers.nt");
const std::string kJoin = tk::fixture_path("bloggers_join.rq");
const std::string kOptional = tk::fixture_path("bloggers_optional.rq");
const std::string kCrossing = tk::fixture_path("bloggers_crossing.rq");

}  // namespace

TEST_CASE("optional query as TSV") {
  Outcome r = run({"--data", kData, "--query", kOptional});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "?u\t?v\t?x\t?y\t?z\n"
        "\"Jon Foobar\"\t<http://xmlns.com/foaf/0.1/Agent>\t<http://foobar.xx/blog.rdf>\t"
        "<http://example.org/id1>\t<http://example.org/id1>\n");
  CHECK(r.err.empty());
}

TEST_CASE("join query as JSON") {
  Outcome r = run({"--data", kData, "--query", kJoin, "--format", "json"});
  REQUIRE(r.status == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["vars"] == nlohmann::json({"u", "x", "y", "z"}));
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["u"] == "\"Jon Foobar\"");
  CHECK(doc["rows"][0]["z"] == "<http://example.org/id1>");
}

TEST_CASE("unbound cells are empty or absent") {
  std::string data = "<http://a> <http://p> <http://b> .\n";
  std::string query = "SELECT * { ?s <http://p> ?o OPTIONAL { ?o <http://q> ?x } }";
  Outcome tsv = run({"--data", "-", "--query", query}, data);
  CHECK(tsv.out == "?o\t?s\t?x\n<http://b>\t<http://a>\t\n");
  Outcome json = run({"--data", "-", "--query", query, "--format", "json"}, data);
  auto doc = nlohmann::json::parse(json.out);
  CHECK_FALSE(doc["rows"][0].contains("x"));
}

TEST_CASE("a group may start with OPTIONAL") {
  std::string data = "<http://a> <http://p> <http://b> .\n";
  std::string query = "SELECT * { OPTIONAL { ?s <http://p> ?o } }";
  CHECK(run({"--data", "-", "--query", query}, data).out == "?o\t?s\n<http://b>\t<http://a>\n");
  // Over an empty graph the empty mandatory side still yields one empty row.
  CHECK(run({"--data", "-", "--query", query}, "").out == "?o\t?s\n\t\n");
}

TEST_CASE("check classifies the optional and crossing queries") {
  Outcome ok = run({"--check", "--query", kOptional});
  CHECK(ok.status == 0);
  CHECK(ok.out == "union_free: true\nsafe: true\nwell_designed: true\nopt_normal_form: false\n");

  Outcome bad = run({"--check", "--query", kCrossing});
  CHECK(bad.status == 2);
  CHECK(bad.out.find("well_designed: false") != std::string::npos);
  CHECK(bad.out.find("?z") != std::string::npos);
}

TEST_CASE("strict and fallback modes on the crossing query") {
  Outcome strict = run({"--data", kData, "--query", kCrossing});
  CHECK(strict.status == 2);
  CHECK(strict.err.find("?z") != std::string::npos);
  CHECK(strict.out.empty());

  Outcome fallback = run({"--data", kData, "--query", kCrossing, "--mode", "oracle-fallback"});
  CHECK(fallback.status == 0);
  CHECK(fallback.out == "?u\t?x\t?y\t?z\n");
}

TEST_CASE("explain prints the plan") {
  Outcome r = run({"--explain", "--query", kOptional});
  CHECK(r.status == 0);
  CHECK(r.out == tk::read_fixture("bloggers_optional.explain"));
  CHECK(run({"--explain", "--query", kCrossing}).status == 2);
}

TEST_CASE("timings go to standard error") {
  Outcome r = run({"--data", kData, "--query", kOptional, "--time"});
  CHECK(r.status == 0);
  for (const char* phase : {"load", "parse", "rewrite", "leaf_eval", "join", "project"})
    CHECK(r.err.find(std::string("time ") + phase + " ") != std::string::npos);
  CHECK(r.err.find("leaves 2, joins 1") != std::string::npos);
}

TEST_CASE("errors exit with status 1") {
  CHECK(run({"--data", kData}).status == 1);
  CHECK(run({"--query", kOptional}).status == 1);
  CHECK(run({"--data", kData, "--query", "SELECT * WHERE { }"}).status == 1);
  CHECK(run({"--data", "-", "--query", kOptional}, "<http://a> <http://p> .\n").status == 1);
  CHECK(run({"--data", kData, "--query", kOptional, "--engine", "gstore"}).status == 1);
  CHECK(run({"--data", kData, "--query", kOptional, "--format", "xml"}).status == 1);
  CHECK(run({"--data", kData, "--query", kOptional, "--bogus"}).status == 1);
  CHECK(run({"--data", tk::fixture_path("absent.nt"), "--query", kOptional}).status == 1);
  Outcome parse = run({"--check", "--query", "SELECT * WHERE {\n ?a foaf:x ?b }"});
  CHECK(parse.status == 1);
  CHECK(parse.err.find("line 2") != std::string::npos);
}

TEST_CASE("engines produce identical bytes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    tk::PatternGenConfig cfg;
    cfg.seed = seed;
    optplan::Query q{std::nullopt, tk::gen_well_designed(cfg), {}};
    std::string data = optplan::to_ntriples(tk::gen_graph({.seed = seed}));
    std::string text = optplan::to_sparql(q);
    for (const char* format : {"tsv", "json"}) {
      Outcome reference = run({"--data", "-", "--query", text, "--format", format}, data);
      Outcome naive = run({"--data", "-", "--query", text, "--format", format, "--engine", "naive"}, data);
      Outcome oracle = run({"--data", "-", "--query", text, "--format", format, "--engine", "oracle"}, data);
      Outcome again = run({"--data", "-", "--query", text, "--format", format}, data);
      CHECK(reference.status == 0);
      CHECK(reference.out == naive.out);
      CHECK(reference.out == oracle.out);
      CHECK(reference.out == again.out);
    }
  }
}

TEST_CASE("projection warning") {
  Outcome r = run({"--data", kData, "--query", "SELECT ?nope ?x { ?x <http://p> ?y }"});
  CHECK(r.status == 0);
  CHECK(r.out == "?nope\t?x\n");
  CHECK(r.err.find("?nope") != std::string::npos);
}
