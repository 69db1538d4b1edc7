#pragma once

// Experimental harness: synthetic stratified KBs with a controlled number of
// conflicts, retrieval metrics, answer productivity and the timed
// before/after-querying comparison grid.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "literepair/model.hpp"
#include "literepair/query.hpp"
#include "literepair/reasoner.hpp"
#include "literepair/repair.hpp"

namespace literepair {

struct GenSpec {
  std::size_t assertions = 1000;
  std::size_t strata = 5;
  std::size_t conflicts = 0;
  // Zero selects a size derived from the other fields.
  std::size_t concepts = 0;
  std::size_t roles = 0;
  std::size_t individuals = 0;
  std::uint64_t seed = 1;
};

// KB over the fixed template vocabulary (concepts C0.., top concept Top,
// roles R0.., individuals i0..) with exactly spec.assertions assertions,
// spec.strata strata, and exactly spec.conflicts minimal conflicts in the
// union of the strata. Conflict partners never share a stratum. Pure
// function of the spec. Throws InfeasibleSpecError.
PrioritizedKB generate(const GenSpec& spec);

// Query families used by the bench for a generated KB: one instance query,
// one conjunctive query and a seeded sample of ground queries.
std::vector<ConjunctiveQuery> bench_queries(const GenSpec& spec, const PrioritizedKB& kb);

struct Ratio {
  double value = 0.0;
  bool undefined = false;  // zero denominator; value is then 0
};

struct Metrics {
  std::size_t cr = 0;   // conflict-free and retained
  std::size_t cnr = 0;  // conflict-free, not retained
  std::size_t ir = 0;   // conflict-involved and retained
  std::size_t inr = 0;  // conflict-involved, not retained
  Ratio precision;
  Ratio recall;
  Ratio f_measure;

  Metrics& operator+=(const Metrics& other);  // adds counts, recomputes ratios
  void recompute();
};

// Classifies universe into conflict-free / conflict-involved by its own
// conflicts and scores the retained subset. Throws UsageError when retained
// is not a subset of universe.
Metrics metrics(const Reasoner& reasoner, const AssertionSet& universe, const AssertionSet& retained);

// |retained answers| / |answers ignoring consistency|.
Ratio productivity(std::size_t all_answers, std::size_t retained_answers);
Ratio productivity(const AnswerProfile& profile, const std::vector<AnswerTuple>& retained_answers);

struct BenchCell {
  std::size_t conflicts = 0;
  std::size_t strata = 0;
  QueryKind query_kind = QueryKind::kInstance;
  Strategy strategy = Strategy::kPossibilistic;
  Pipeline pipeline = Pipeline::kAfterQuery;
  Metrics metrics;
  Ratio productivity;
  std::size_t raw_answers = 0;
  std::size_t retained_answers = 0;
  double median_ms = 0.0;
  std::vector<double> times_ms;
};

struct BenchOptions {
  std::vector<Strategy> strategies{Strategy::kPossibilistic, Strategy::kLinear, Strategy::kNonDefeated};
  std::vector<Pipeline> pipelines{Pipeline::kAfterQuery, Pipeline::kBeforeQuery};
  std::size_t repetitions = 5;  // >= 3
  SupportMode mode = SupportMode::kAboutAnswers;
};

// Runs every (query kind x strategy x pipeline) cell. Queries of the same
// kind are pooled: counts are summed and a cell's time covers the whole
// family. Cells run one at a time.
std::vector<BenchCell> bench(const GenSpec& spec, const PrioritizedKB& kb, const std::vector<ConjunctiveQuery>& queries,
                             const BenchOptions& options = {});
std::vector<BenchCell> bench(const GenSpec& spec, const BenchOptions& options = {});

// Fixed header: conflict_size,strata,query_kind,strategy,pipeline,precision,
// recall,f_measure,productivity,median_ms; preceded by '#' lines echoing the
// generator spec and seed.
void write_bench_csv(std::ostream& out, const GenSpec& spec, const std::vector<BenchCell>& cells,
                     bool echo_spec = true);
// The same file built in pieces, for grids over several conflict sizes:
// '#' lines listing every size, the header, then rows from each bench run.
void write_bench_csv_preamble(std::ostream& out, const GenSpec& spec, const std::vector<std::size_t>& conflict_sizes);
void write_bench_csv_rows(std::ostream& out, const std::vector<BenchCell>& cells);
inline constexpr const char* kBenchCsvHeader =
    "conflict_size,strata,query_kind,strategy,pipeline,precision,recall,f_measure,productivity,median_ms";

}  // namespace literepair
