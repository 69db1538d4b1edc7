#pragma once

// Consistency rank and the possibilistic, linear and non-defeated repairs of
// a stratified assertion base. The same engine serves both pipelines: it is
// fed the per-stratum answer supports after querying, or the raw strata of
// the KB before querying.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "literepair/model.hpp"
#include "literepair/query.hpp"
#include "literepair/reasoner.hpp"

namespace literepair {

enum class Strategy { kPossibilistic, kLinear, kNonDefeated };
enum class Pipeline { kAfterQuery, kBeforeQuery };

const char* to_string(Strategy strategy);  // "pi", "linear", "nd"
const char* to_string(Pipeline pipeline);  // "after-query", "before-query"
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<Pipeline> parse_pipeline(std::string_view text);  // also "after", "before"

struct RankResult {
  std::size_t rank = 0;
  std::size_t checks = 0;  // consistency tests performed
};

// Largest k in [0, m] with X_1 ∪ ... ∪ X_k consistent, by recursive halving
// of the prefix boundary. Uses at most ceil(log2 m) + 1 consistency tests.
RankResult cns_rank(const Reasoner& reasoner, const StratifiedAssertions& strata);

struct Repair {
  AssertionSet assertions;
  Strategy strategy = Strategy::kPossibilistic;
  Pipeline pipeline = Pipeline::kAfterQuery;
  std::size_t rank = 0;
  // Consistency tests plus free-set computations performed.
  std::size_t checks = 0;
};

// Observes the accumulated linear repair after every loop iteration.
using LinearStepHook = std::function<void(std::size_t stratum, const AssertionSet& accumulated)>;

Repair pi_repair(const Reasoner& reasoner, const StratifiedAssertions& strata);
Repair linear_repair(const Reasoner& reasoner, const StratifiedAssertions& strata,
                     const LinearStepHook& hook = nullptr);
Repair nd_repair(const Reasoner& reasoner, const StratifiedAssertions& strata);
Repair run_strategy(Strategy strategy, const Reasoner& reasoner, const StratifiedAssertions& strata);

// nd_k = ∪_{j<=k} free(X_1 ∪ ... ∪ X_j) for k = 1..m; the last row is nd.
std::vector<AssertionSet> nd_prefix_table(const Reasoner& reasoner, const StratifiedAssertions& strata);

struct RepairOutcome {
  Repair repair;
  std::vector<AnswerTuple> answers;
  // Answers obtained when consistency is ignored: the union of all S_i
  // after querying, the answers over the union of the strata before.
  std::vector<AnswerTuple> raw_answers;
  // Set for the after-query pipeline.
  std::optional<AnswerProfile> profile;
};

// after-query: profile -> strategy on the supports -> answers via supports.
// before-query: strategy on the strata -> evaluate the query on the repair.
RepairOutcome repair_answers(const ConjunctiveQuery& query, const PrioritizedKB& kb, Strategy strategy,
                             Pipeline pipeline, SupportMode mode = SupportMode::kAboutAnswers);

}  // namespace literepair
