#include "literepair/repair.hpp"

namespace literepair {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kPossibilistic:
      return "pi";
    case Strategy::kLinear:
      return "linear";
    case Strategy::kNonDefeated:
      return "nd";
  }
  return "?";
}

const char* to_string(Pipeline pipeline) {
  return pipeline == Pipeline::kAfterQuery ? "after-query" : "before-query";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "pi") return Strategy::kPossibilistic;
  if (text == "linear") return Strategy::kLinear;
  if (text == "nd") return Strategy::kNonDefeated;
  return std::nullopt;
}

std::optional<Pipeline> parse_pipeline(std::string_view text) {
  if (text == "after" || text == "after-query") return Pipeline::kAfterQuery;
  if (text == "before" || text == "before-query") return Pipeline::kBeforeQuery;
  return std::nullopt;
}

namespace {

bool prefix_consistent(const Reasoner& reasoner, const StratifiedAssertions& strata, std::size_t k,
                       std::size_t& checks) {
  ++checks;
  auto views = strata.prefix_views(k);
  return reasoner.is_consistent(std::span<const std::span<const Assertion>>(views));
}

// Prefix lo is consistent, prefix hi is not.
std::size_t search(const Reasoner& reasoner, const StratifiedAssertions& strata, std::size_t lo, std::size_t hi,
                   std::size_t& checks) {
  if (hi - lo <= 1) return lo;
  std::size_t mid = lo + (hi - lo) / 2;
  if (prefix_consistent(reasoner, strata, mid, checks)) return search(reasoner, strata, mid, hi, checks);
  return search(reasoner, strata, lo, mid, checks);
}

}  // namespace

RankResult cns_rank(const Reasoner& reasoner, const StratifiedAssertions& strata) {
  RankResult r;
  std::size_t m = strata.size();
  if (m == 0) return r;
  if (prefix_consistent(reasoner, strata, m, r.checks)) {
    r.rank = m;
    return r;
  }
  r.rank = search(reasoner, strata, 0, m, r.checks);
  return r;
}

Repair pi_repair(const Reasoner& reasoner, const StratifiedAssertions& strata) {
  RankResult rank = cns_rank(reasoner, strata);
  Repair out;
  out.strategy = Strategy::kPossibilistic;
  out.rank = rank.rank;
  out.checks = rank.checks;
  out.assertions = strata.union_up_to(rank.rank);
  return out;
}

Repair linear_repair(const Reasoner& reasoner, const StratifiedAssertions& strata, const LinearStepHook& hook) {
  Repair out = pi_repair(reasoner, strata);
  out.strategy = Strategy::kLinear;
  for (std::size_t i = out.rank + 1; i <= strata.size(); ++i) {
    std::span<const Assertion> views[] = {out.assertions.view(), strata.stratum(i).view()};
    ++out.checks;
    if (reasoner.is_consistent(std::span<const std::span<const Assertion>>(views)))
      out.assertions.insert(strata.stratum(i));
    if (hook) hook(i, out.assertions);
  }
  return out;
}

Repair nd_repair(const Reasoner& reasoner, const StratifiedAssertions& strata) {
  Repair out = pi_repair(reasoner, strata);
  out.strategy = Strategy::kNonDefeated;
  // Prefixes up to the rank are consistent and contribute exactly pi.
  for (std::size_t i = out.rank + 1; i <= strata.size(); ++i) {
    auto views = strata.prefix_views(i);
    ++out.checks;
    out.assertions.insert(reasoner.free_set(std::span<const std::span<const Assertion>>(views)));
  }
  return out;
}

Repair run_strategy(Strategy strategy, const Reasoner& reasoner, const StratifiedAssertions& strata) {
  switch (strategy) {
    case Strategy::kLinear:
      return linear_repair(reasoner, strata);
    case Strategy::kNonDefeated:
      return nd_repair(reasoner, strata);
    case Strategy::kPossibilistic:
      break;
  }
  return pi_repair(reasoner, strata);
}

std::vector<AssertionSet> nd_prefix_table(const Reasoner& reasoner, const StratifiedAssertions& strata) {
  std::vector<AssertionSet> rows;
  AssertionSet acc;
  for (std::size_t k = 1; k <= strata.size(); ++k) {
    auto views = strata.prefix_views(k);
    acc.insert(reasoner.free_set(std::span<const std::span<const Assertion>>(views)));
    rows.push_back(acc);
  }
  return rows;
}

RepairOutcome repair_answers(const ConjunctiveQuery& query, const PrioritizedKB& kb, Strategy strategy,
                             Pipeline pipeline, SupportMode mode) {
  Reasoner reasoner(kb.tbox());
  RepairOutcome out;
  if (pipeline == Pipeline::kAfterQuery) {
    AnswerProfile profile = answer_profile(query, kb, mode);
    out.repair = run_strategy(strategy, reasoner, profile.supports());
    out.answers = answers_from_assertions(profile, out.repair.assertions);
    out.raw_answers = profile.all_answers();
    out.profile = std::move(profile);
  } else {
    out.repair = run_strategy(strategy, reasoner, kb.profile());
    PreparedQuery prepared(query, kb.tbox());
    out.answers = evaluate(prepared.rewriting, AssertionStore(out.repair.assertions));
    out.raw_answers = evaluate(prepared.rewriting, AssertionStore(kb.all_assertions()));
  }
  out.repair.pipeline = pipeline;
  return out;
}

}  // namespace literepair
