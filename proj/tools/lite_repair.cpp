// lite-repair: command line front end.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "literepair/error.hpp"
#include "literepair/eval.hpp"
#include "literepair/textio.hpp"

using namespace literepair;

namespace {

struct Options {
  std::string kb;
  std::string query;
  std::string mode = "about-answers";
  std::string pipeline = "after";
  std::string strategy;
  std::string out;
  std::string csv;
  std::uint64_t seed = 1;
  std::size_t assertions = 1000;
  std::size_t strata = 5;
  std::vector<std::size_t> conflicts{0};
  std::size_t concepts = 0;
  std::size_t roles = 0;
  std::size_t individuals = 0;
  std::size_t repetitions = 5;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prefixes parse errors with the file name.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw Error(e.code(), path + ":" + e.what());
  }
}

PrioritizedKB load_kb(const Options& o) {
  if (o.kb.empty()) throw UsageError("--kb is required");
  return parse_file(o.kb, [](const std::string& t) { return parse_kb(t); });
}

std::optional<ConjunctiveQuery> load_query(const Options& o) {
  if (o.query.empty()) return std::nullopt;
  return parse_file(o.query, [](const std::string& t) { return parse_query(t); });
}

SupportMode mode_of(const Options& o) {
  if (o.mode == "about-answers") return SupportMode::kAboutAnswers;
  if (o.mode == "instantiation") return SupportMode::kInstantiation;
  throw UsageError("unknown --mode '" + o.mode + "' (about-answers|instantiation)");
}

Pipeline pipeline_of(const std::string& text) {
  auto p = parse_pipeline(text);
  if (!p) throw UsageError("unknown --pipeline '" + text + "' (after|before)");
  return *p;
}

std::vector<Strategy> strategies_of(const std::string& text, std::vector<Strategy> fallback) {
  if (text.empty()) return fallback;
  if (text == "all") return {Strategy::kPossibilistic, Strategy::kLinear, Strategy::kNonDefeated};
  auto s = parse_strategy(text);
  if (!s) throw UsageError("unknown --strategy '" + text + "' (pi|linear|nd|all)");
  return {*s};
}

// The strata the command works on: q_Ps when a query is given and the
// pipeline is after-query, the raw strata otherwise.
struct Target {
  StratifiedAssertions strata;
  std::string label;
};

Target target_of(const Options& o, const PrioritizedKB& kb, const std::optional<ConjunctiveQuery>& q) {
  if (q && pipeline_of(o.pipeline) == Pipeline::kAfterQuery)
    return {answer_profile(*q, kb, mode_of(o)).supports(), "answer supports"};
  return {kb.profile(), "strata"};
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw UsageError("cannot write " + o.out);
  out << text;
}

std::string cmd_check(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  Reasoner reasoner(kb.tbox());
  Report r;
  r.command = "check";
  for (std::size_t i = 1; i <= kb.strata_count(); ++i)
    r.details.emplace_back("stratum_" + std::to_string(i), reasoner.is_consistent(kb.stratum(i)) ? "OK" : "INCONSISTENT");
  auto incoherent = reasoner.incoherent_concepts();
  if (!incoherent.empty()) {
    std::string names;
    for (const auto& b : incoherent) names += (names.empty() ? "" : ", ") + b.to_string();
    r.details.emplace_back("incoherent", "{" + names + "}");
  }
  auto list = [&](const std::string& prefix, const AssertionSet& set) {
    auto found = reasoner.conflicts(set);
    r.details.emplace_back(prefix, found.empty() ? "CONSISTENT" : "INCONSISTENT");
    r.details.emplace_back(prefix + "_conflicts", std::to_string(found.size()));
    for (const auto& c : found) r.details.emplace_back(prefix + "_conflict", c.to_string());
  };
  list("global", kb.all_assertions());
  if (q) {
    r.query = q->to_string();
    list("supports", answer_profile(*q, kb, mode_of(o)).supports().union_all());
  }
  return emit_report(r);
}

std::string cmd_conflicts(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  Target t = target_of(o, kb, q);
  Report r;
  r.command = "conflicts";
  if (q) r.query = q->to_string();
  r.details.emplace_back("over", t.label);
  auto found = Reasoner(kb.tbox()).conflicts(t.strata.union_all());
  r.details.emplace_back("conflict_count", std::to_string(found.size()));
  for (const auto& c : found) r.details.emplace_back("conflict", c.to_string());
  return emit_report(r);
}

std::string cmd_free(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  Target t = target_of(o, kb, q);
  Report r;
  r.command = "free";
  if (q) r.query = q->to_string();
  r.details.emplace_back("over", t.label);
  r.details.emplace_back("free", to_string(Reasoner(kb.tbox()).free_set(t.strata.union_all())));
  return emit_report(r);
}

std::string cmd_rank(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  Target t = target_of(o, kb, q);
  RankResult rank = cns_rank(Reasoner(kb.tbox()), t.strata);
  Report r;
  r.command = "rank";
  if (q) r.query = q->to_string();
  r.details.emplace_back("over", t.label);
  r.rank = rank.rank;
  r.checks = rank.checks;
  return emit_report(r);
}

std::string cmd_repair(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  Pipeline pipeline = pipeline_of(o.pipeline);
  SupportMode mode = mode_of(o);
  if (!q && pipeline == Pipeline::kAfterQuery) throw UsageError("the after-query pipeline needs --query");
  std::string out;
  for (Strategy s : strategies_of(o.strategy, {Strategy::kNonDefeated})) {
    Report r;
    r.command = "repair";
    r.strategy = s;
    r.pipeline = pipeline;
    auto start = std::chrono::steady_clock::now();
    if (q) {
      RepairOutcome outcome = repair_answers(*q, kb, s, pipeline, mode);
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (pipeline == Pipeline::kAfterQuery) r.mode = mode;
      r.query = q->to_string();
      r.rank = outcome.repair.rank;
      r.checks = outcome.repair.checks;
      r.repair = outcome.repair.assertions;
      r.answers = outcome.answers;
      r.raw_answers = outcome.raw_answers;
      r.productivity = productivity(outcome.raw_answers.size(), outcome.answers.size());
      Reasoner reasoner(kb.tbox());
      AssertionSet universe = outcome.profile ? outcome.profile->supports().union_all() : kb.all_assertions();
      r.metrics = metrics(reasoner, universe, outcome.repair.assertions);
    } else {
      Reasoner reasoner(kb.tbox());
      Repair repair = run_strategy(s, reasoner, kb.profile());
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      r.rank = repair.rank;
      r.checks = repair.checks;
      r.repair = repair.assertions;
      r.metrics = metrics(reasoner, kb.all_assertions(), repair.assertions);
    }
    if (!out.empty()) out += "\n";
    out += emit_report(r);
  }
  return out;
}

std::string cmd_query(const Options& o) {
  PrioritizedKB kb = load_kb(o);
  auto q = load_query(o);
  if (!q) throw UsageError("--query is required");
  SupportMode mode = mode_of(o);
  AnswerProfile profile = answer_profile(*q, kb, mode);
  Report r;
  r.command = "query";
  r.mode = mode;
  r.query = q->to_string();
  for (std::size_t i = 0; i < profile.strata.size(); ++i) {
    std::vector<AnswerTuple> a = profile.strata[i].answers;
    std::string label = "stratum_" + std::to_string(i + 1);
    std::string text = "{";
    for (std::size_t j = 0; j < a.size(); ++j)
      text += (j ? ", " : "") + (a[j].size() == 1 ? a[j][0].str() : to_string(a[j]));
    r.details.emplace_back(label + "_answers", text + "}");
    r.details.emplace_back(label + "_support", to_string(profile.strata[i].support));
  }
  r.raw_answers = profile.all_answers();
  return emit_report(r);
}

std::string cmd_bench(const Options& o) {
  BenchOptions options;
  options.strategies = strategies_of(o.strategy, options.strategies);
  if (o.pipeline != "both") options.pipelines = {pipeline_of(o.pipeline)};
  options.repetitions = o.repetitions;
  options.mode = mode_of(o);
  std::ostringstream csv;
  GenSpec spec{o.assertions, o.strata, 0, o.concepts, o.roles, o.individuals, o.seed};
  write_bench_csv_preamble(csv, spec, o.conflicts);
  csv << kBenchCsvHeader << "\n";
  for (std::size_t k : o.conflicts) {
    spec.conflicts = k;
    write_bench_csv_rows(csv, bench(spec, options));
  }
  if (!o.csv.empty()) {
    std::ofstream out(o.csv, std::ios::binary);
    if (!out) throw UsageError("cannot write " + o.csv);
    out << csv.str();
    return "";
  }
  return csv.str();
}

std::string cmd_generate(const Options& o) {
  if (o.conflicts.size() != 1) throw UsageError("generate takes a single --conflicts value");
  GenSpec spec{o.assertions, o.strata, o.conflicts.front(), o.concepts, o.roles, o.individuals, o.seed};
  return emit_kb(generate(spec));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query answering over prioritized, possibly inconsistent DL-Lite knowledge bases"};
  app.require_subcommand(1);
  Options o;

  auto kb_flags = [&](CLI::App* sub, bool with_strategy) {
    sub->add_option("--kb", o.kb, "knowledge base file (.dlkb)");
    sub->add_option("--query", o.query, "query file (.dlq)");
    sub->add_option("--mode", o.mode, "support mode: about-answers|instantiation");
    sub->add_option("--pipeline", o.pipeline, "after|before");
    if (with_strategy) sub->add_option("--strategy", o.strategy, "pi|linear|nd|all");
    sub->add_option("--out", o.out, "write the report to a file");
  };
  auto gen_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "generator seed");
    sub->add_option("--assertions", o.assertions, "number of assertions");
    sub->add_option("--strata", o.strata, "number of strata");
    sub->add_option("--conflicts", o.conflicts, "number of conflicts")->delimiter(',');
    sub->add_option("--concepts", o.concepts, "number of concept names (0 = derived)");
    sub->add_option("--roles", o.roles, "number of role names (0 = derived)");
    sub->add_option("--individuals", o.individuals, "number of conflict-free individuals (0 = derived)");
  };

  std::map<std::string, std::function<std::string(const Options&)>> handlers{
      {"check", cmd_check}, {"conflicts", cmd_conflicts}, {"free", cmd_free},   {"rank", cmd_rank},
      {"repair", cmd_repair}, {"query", cmd_query},       {"bench", cmd_bench}, {"generate", cmd_generate}};

  kb_flags(app.add_subcommand("check", "per-stratum and global consistency"), false);
  kb_flags(app.add_subcommand("conflicts", "minimal conflicts"), false);
  kb_flags(app.add_subcommand("free", "assertions involved in no conflict"), false);
  kb_flags(app.add_subcommand("rank", "consistency rank"), false);
  kb_flags(app.add_subcommand("repair", "repair and answer"), true);
  kb_flags(app.add_subcommand("query", "answers and supports per stratum"), false);
  auto* bench_cmd = app.add_subcommand("bench", "before/after-querying comparison grid");
  gen_flags(bench_cmd);
  bench_cmd->add_option("--strategy", o.strategy, "pi|linear|nd|all");
  bench_cmd->add_option("--pipeline", o.pipeline, "after|before|both")->default_str("both");
  bench_cmd->add_option("--mode", o.mode, "support mode: about-answers|instantiation");
  bench_cmd->add_option("--repetitions", o.repetitions, "timed repetitions per cell (>= 3)");
  bench_cmd->add_option("--csv", o.csv, "write the grid to a CSV file");
  auto* gen_cmd = app.add_subcommand("generate", "synthetic prioritized KB");
  gen_flags(gen_cmd);
  gen_cmd->add_option("--out", o.out, "write the KB to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[E_USAGE]: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_name() == "bench" && sub->count("--pipeline") == 0) o.pipeline = "both";
  try {
    std::string text = handlers.at(sub->get_name())(o);
    write_output(o, text);
  } catch (const Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    return e.code() == "E_PARSE" || e.code() == "E_USAGE" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error[E_INTERNAL]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
