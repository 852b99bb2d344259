// Copyright 2026 The agq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// agq: import, validate, index and query annotation graph corpora.
//
// Exit codes: 0 ok, 1 validation violations, 2 usage or I/O, 3 query errors.

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "agq/eval.h"
#include "agq/graph.h"
#include "agq/query.h"
#include "agq/relstore.h"
#include "agq/tindex.h"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kQueryError = 3;

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string violation_line(const agq::ViolationEntry& v) {
  std::string ids;
  for (std::size_t i = 0; i < v.ids.size(); ++i) {
    ids += (i ? "," : "") + std::to_string(v.ids[i]);
  }
  return std::string(agq::violation_code(v.code)) + "\t" + ids + "\t" +
         v.message;
}

agq::RelationalStore load_store(const std::string& dir) {
  if (dir.empty()) {
    throw Failure{kUsage, "no corpus directory (use -d or AGQ_CORPUS)"};
  }
  try {
    return agq::load(dir);
  } catch (const agq::StoreError& e) {
    throw Failure{kUsage, e.what()};
  }
}

agq::AnnotationGraph load_graph(const agq::RelationalStore& store) {
  try {
    return agq::to_graph(store);
  } catch (const agq::StoreError& e) {
    throw Failure{kUsage, e.what()};
  }
}

agq::eval::Corpus load_corpus(const std::string& dir) {
  agq::RelationalStore store = load_store(dir);
  agq::AnnotationGraph g = load_graph(store);
  agq::ValidationReport report = agq::validate(g);
  if (!report.ok()) {
    std::string msg = "corpus is not a valid annotation graph:";
    for (const auto& v : report.violations) msg += "\n" + violation_line(v);
    throw Failure{kInvalid, msg};
  }
  return agq::eval::Corpus(std::move(g), store.meta());
}

std::string query_text(const std::string& expr, const std::string& file) {
  if (!expr.empty() && !file.empty()) {
    throw Failure{kUsage, "give the query with -e or -q, not both"};
  }
  if (!expr.empty()) return expr;
  if (!file.empty()) return read_file(file);
  throw Failure{kUsage, "no query (use -e TEXT or -q FILE)"};
}

void print_results(const agq::eval::ResultSet& r, const std::string& format) {
  if (format == "json-lines") {
    std::cout << agq::eval::format_json_lines(r);
  } else {
    std::cout << agq::eval::format_tsv(r);
  }
}

agq::query::CheckedQuery checked(const std::string& text) {
  return agq::query::check(agq::query::parse(text));
}

void run_query(const std::string& text, const agq::eval::Corpus& corpus,
               bool optimize, const std::string& format) {
  agq::query::CheckedQuery q = checked(text);
  agq::eval::Plan plan =
      optimize ? agq::eval::compile(q) : agq::eval::compile_naive(q);
  for (const auto& w : plan.warnings) std::cerr << "warning: " << w << "\n";
  print_results(agq::eval::run(plan, corpus), format);
}

std::string stats_text(const agq::eval::Corpus& corpus, bool tc) {
  agq::IndexStats s = corpus.index().stats(tc);
  std::ostringstream out;
  out << agq::format_index_stats(s);
  out << "# nodes=" << s.node_count << " timed=" << s.timed_node_count
      << " residual=" << s.residual_size
      << " strict_residual=" << s.strict_residual_size;
  if (s.full_precedence_size) out << " tc=" << *s.full_precedence_size;
  out << "\n";
  return out.str();
}

int repl(const agq::eval::Corpus& corpus, std::string format) {
  bool optimize = true;
  bool tty = isatty(STDIN_FILENO);
  std::string buffer, line;
  auto prompt = [&] {
    if (tty) std::cout << (buffer.empty() ? "agq> " : "...> ") << std::flush;
  };
  prompt();
  while (std::getline(std::cin, line)) {
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (buffer.empty() && !trimmed.empty() && trimmed[0] == '\\') {
      if (trimmed == "\\q") return kOk;
      if (trimmed == "\\stats") {
        std::cout << stats_text(corpus, false);
      } else if (trimmed == "\\opt on") {
        optimize = true;
      } else if (trimmed == "\\opt off") {
        optimize = false;
      } else {
        std::cout << "unknown command " << trimmed
                  << " (\\q, \\stats, \\opt on|off)\n";
      }
      prompt();
      continue;
    }
    buffer += line + "\n";
    if (!trimmed.empty() && trimmed.back() == ';') {
      try {
        run_query(buffer, corpus, optimize, format);
      } catch (const agq::query::QueryError& e) {
        std::cout << "error: " << e.what() << "\n";
      } catch (const agq::eval::EvalError& e) {
        std::cout << "error: " << e.what() << "\n";
      }
      buffer.clear();
    }
    prompt();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agq: query engine for anchored annotation graphs"};
  app.require_subcommand(1);

  std::string corpus_dir;
  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("-d,--corpus", corpus_dir, "corpus directory")
        ->envname("AGQ_CORPUS");
  };

  auto* imp = app.add_subcommand("import", "import transcriptions");
  std::string kind, wrd, phn, turns, out_dir;
  std::int64_t rate = 16000;
  imp->add_option("--kind", kind, "timit or turns")
      ->required()
      ->check(CLI::IsMember({"timit", "turns"}));
  imp->add_option("--wrd", wrd, "word segmentation file");
  imp->add_option("--phn", phn, "phone segmentation file");
  imp->add_option("--turns", turns, "speaker turn file");
  imp->add_option("--rate", rate, "ticks per second");
  imp->add_option("-o,--out", out_dir, "output directory")->required();

  auto* val = app.add_subcommand("validate", "check the graph conditions");
  add_corpus(val);

  std::string expr, file, format = "tsv";
  bool no_opt = false;
  auto* qry = app.add_subcommand("query", "run a query");
  add_corpus(qry);
  qry->add_option("-e,--expr", expr, "query text");
  qry->add_option("-q,--file", file, "query file");
  qry->add_flag("--no-opt", no_opt, "disable bounded evaluation");
  qry->add_option("--format", format, "tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));

  auto* rep = app.add_subcommand("repl", "interactive queries");
  add_corpus(rep);
  rep->add_option("--format", format, "tsv or json-lines")
      ->check(CLI::IsMember({"tsv", "json-lines"}));

  bool with_tc = false;
  auto* st = app.add_subcommand("index-stats", "time index statistics");
  add_corpus(st);
  st->add_flag("--tc", with_tc, "also count the full precedence relation");

  auto* exp = app.add_subcommand("explain", "show the evaluation plan");
  add_corpus(exp);
  exp->add_option("-e,--expr", expr, "query text");
  exp->add_option("-q,--file", file, "query file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*imp) {
      if (rate <= 0) throw Failure{kUsage, "invalid resolution --rate"};
      agq::RelationalStore store;
      try {
        if (kind == "timit") {
          if (wrd.empty() || phn.empty()) {
            throw Failure{kUsage, "timit import needs --wrd and --phn"};
          }
          std::string w = read_file(wrd), p = read_file(phn);
          store = agq::import_timit(agq::parse_segment_lines(w),
                                    agq::parse_segment_lines(p), rate);
        } else {
          if (turns.empty()) throw Failure{kUsage, "turns import needs --turns"};
          store = agq::import_turns(
              agq::parse_turn_lines(read_file(turns), rate), rate);
        }
        agq::AnnotationGraph g = agq::to_graph(store);
        agq::save(store, out_dir);
        std::cout << "imported " << g.node_count() << " nodes, "
                  << g.arc_count() << " arcs into " << out_dir << "\n";
      } catch (const agq::StoreError& e) {
        throw Failure{kUsage, e.what()};
      }
      return kOk;
    }
    if (*val) {
      agq::RelationalStore store = load_store(corpus_dir);
      agq::ValidationReport report = agq::validate(load_graph(store));
      if (report.ok()) {
        std::cout << "OK\n";
        return kOk;
      }
      for (const auto& v : report.violations) {
        std::cout << violation_line(v) << "\n";
      }
      return kInvalid;
    }
    if (*qry) {
      std::string text = query_text(expr, file);
      // Reject bad queries before touching the corpus.
      checked(text);
      agq::eval::Corpus corpus = load_corpus(corpus_dir);
      run_query(text, corpus, !no_opt, format);
      return kOk;
    }
    if (*rep) {
      agq::eval::Corpus corpus = load_corpus(corpus_dir);
      return repl(corpus, format);
    }
    if (*st) {
      agq::eval::Corpus corpus = load_corpus(corpus_dir);
      std::cout << stats_text(corpus, with_tc);
      return kOk;
    }
    if (*exp) {
      std::string text = query_text(expr, file);
      std::cout << agq::eval::explain(agq::eval::compile(checked(text)));
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "agq: " << f.message << "\n";
    return f.code;
  } catch (const agq::query::QueryError& e) {
    std::cerr << "agq: " << e.what() << "\n";
    return kQueryError;
  } catch (const agq::eval::EvalError& e) {
    std::cerr << "agq: " << e.what() << "\n";
    return kQueryError;
  }
  return kUsage;
}
