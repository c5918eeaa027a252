#include "optplan/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "optplan/analysis.hpp"
#include "optplan/bgp_engine.hpp"
#include "optplan/error.hpp"
#include "optplan/evaluator.hpp"
#include "optplan/oracle.hpp"
#include "optplan/query.hpp"
#include "optplan/rewrite.hpp"

namespace optplan::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Config {
  std::string data_path;
  std::string query_source;
  std::string engine = "reference";
  std::string mode = "strict";
  std::string format = "tsv";
  bool explain = false;
  bool check = false;
  bool time = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read '" + path + "'");
  return slurp(file);
}

// `-` reads standard input; an existing path is read as a file; anything containing a
// group brace is taken as inline query text.
std::string query_text(const std::string& source, std::istream& in) {
  if (source == "-") return slurp(in);
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) return read_file(source);
  if (source.find('{') != std::string::npos) return source;
  throw UsageError("cannot read query '" + source + "'");
}

std::vector<std::vector<std::string>> sorted_rows(const SolutionSet& solutions, const std::vector<Variable>& cols) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(solutions.size());
  for (const auto& m : solutions) {
    std::vector<std::string> row;
    row.reserve(cols.size());
    for (const auto& v : cols) {
      const Term* t = m.get(v);
      row.push_back(t != nullptr ? t->to_ntriples() : std::string());
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

double millis(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

void print_time(std::ostream& err, const char* phase, std::chrono::nanoseconds d) {
  err << "time " << phase << ' ' << std::fixed << std::setprecision(3) << millis(d) << " ms\n";
  err.unsetf(std::ios::floatfield);
}

int check_pattern(const Query& q, std::ostream& out) {
  auto violation = find_violation(q.pattern);
  out << "union_free: " << (is_union_free(q.pattern) ? "true" : "false") << '\n';
  out << "safe: " << (is_safe(q.pattern) ? "true" : "false") << '\n';
  out << "well_designed: " << (violation ? "false" : "true");
  if (violation) out << " (" << violation->describe() << ")";
  out << '\n';
  out << "opt_normal_form: " << (is_opt_normal_form(q.pattern) ? "true" : "false") << '\n';
  return violation ? 2 : 0;
}

int execute(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  if (cfg.query_source.empty()) throw UsageError("--query is required");
  if (cfg.data_path == "-" && cfg.query_source == "-") throw UsageError("data and query cannot both be standard input");

  auto parse_start = Clock::now();
  Query q;
  try {
    q = parse_query(query_text(cfg.query_source, in));
  } catch (const ParseError& e) {
    err << "error: query: " << e.what() << '\n';
    return 1;
  }
  auto parse_time = Clock::now() - parse_start;

  VariableSet pattern_vars = vars(q.pattern);
  if (q.projection) {
    for (const auto& v : *q.projection)
      if (!pattern_vars.contains(v)) err << "warning: ?" << v.name << " does not occur in the pattern\n";
  }

  if (cfg.check || cfg.explain) {
    int status = 0;
    if (cfg.check) status = check_pattern(q, out);
    if (cfg.explain) {
      if (auto violation = find_violation(q.pattern)) {
        err << "error: " << NotWellDesigned(*violation).what() << '\n';
        return 2;
      }
      out << explain(to_plan_tree(q.pattern), q.prefixes);
    }
    return status;
  }

  if (cfg.data_path.empty()) throw UsageError("--data is required for evaluation");

  EvalMode mode;
  if (cfg.mode == "strict") mode = EvalMode::Strict;
  else if (cfg.mode == "oracle-fallback") mode = EvalMode::OracleFallback;
  else throw UsageError("unknown mode '" + cfg.mode + "'");

  OutputFormat format;
  if (cfg.format == "tsv") format = OutputFormat::Tsv;
  else if (cfg.format == "json") format = OutputFormat::Json;
  else throw UsageError("unknown format '" + cfg.format + "'");

  auto registry = EngineRegistry::with_builtins();
  bool whole_pattern_oracle = cfg.engine == "oracle";
  if (!whole_pattern_oracle && !registry.contains(cfg.engine))
    throw UsageError("unknown engine '" + cfg.engine + "'");

  auto load_start = Clock::now();
  Graph graph;
  try {
    if (cfg.data_path == "-") {
      graph = parse_ntriples(in);
    } else {
      std::ifstream file(cfg.data_path, std::ios::binary);
      if (!file) throw UsageError("cannot read '" + cfg.data_path + "'");
      graph = parse_ntriples(file);
    }
  } catch (const ParseError& e) {
    err << "error: data: " << e.what() << '\n';
    return 1;
  }
  auto load_time = Clock::now() - load_start;

  EvalReport report;
  if (whole_pattern_oracle) {
    auto start = Clock::now();
    report.solutions = project(oracle::eval_direct(q.pattern, graph), output_variables(q));
    report.times.leaf_eval = Clock::now() - start;
    report.used_oracle = true;
  } else {
    auto engine = registry.create(cfg.engine);
    try {
      report = run_query(q, graph, *engine, mode);
    } catch (const NotWellDesigned& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }

  out << format_results(report.solutions, output_variables(q), format);

  if (cfg.time) {
    print_time(err, "load", load_time);
    print_time(err, "parse", parse_time);
    print_time(err, "rewrite", report.times.rewrite);
    print_time(err, "leaf_eval", report.times.leaf_eval);
    print_time(err, "join", report.times.join);
    print_time(err, "project", report.times.project);
    err << "leaves " << report.per_leaf_counts.size() << ", joins " << report.per_join_counts.size()
        << (report.used_oracle ? ", evaluated by oracle" : "") << '\n';
  }
  return 0;
}

}  // namespace

std::string format_results(const SolutionSet& solutions, const VariableSet& columns, OutputFormat format) {
  std::vector<Variable> cols(columns.begin(), columns.end());
  auto rows = sorted_rows(solutions, cols);

  if (format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["vars"] = nlohmann::ordered_json::array();
    for (const auto& v : cols) doc["vars"].push_back(v.name);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (!row[i].empty()) obj[cols[i].name] = row[i];
      doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
  }

  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out += '\t';
    out += "?" + cols[i].name;
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += '\t';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Evaluates well-designed AND/OPT SPARQL queries over N-Triples data", "optplan"};
  app.add_option("--data", cfg.data_path, "N-Triples data file, or - for standard input");
  app.add_option("--query", cfg.query_source, "query file, inline query text, or - for standard input");
  app.add_option("--engine", cfg.engine, "BGP engine: reference, naive, or oracle (whole-pattern direct evaluation)")
      ->capture_default_str();
  app.add_option("--mode", cfg.mode, "strict or oracle-fallback")->capture_default_str();
  app.add_option("--format", cfg.format, "tsv or json")->capture_default_str();
  app.add_flag("--explain", cfg.explain, "print the query plan tree");
  app.add_flag("--check", cfg.check, "print the pattern classification");
  app.add_flag("--time", cfg.time, "print phase timings to standard error");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    return execute(cfg, in, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const RewriteError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace optplan::cli
