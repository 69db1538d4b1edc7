#include "literepair/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "literepair/error.hpp"

namespace literepair {

namespace {

// Portable across standard libraries, unlike the std distributions.
std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <class T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[pick(rng, i)]);
}

Symbol concept_name(std::size_t i) { return Symbol("C" + std::to_string(i)); }
Symbol role_name(std::size_t i) { return Symbol("R" + std::to_string(i)); }
Symbol individual_name(std::size_t i) { return Symbol("i" + std::to_string(i)); }

struct Vocabulary {
  std::size_t concepts;
  std::size_t roles;
  std::vector<std::size_t> group[2];  // concept indices by parity
};

Vocabulary vocabulary(const GenSpec& spec) {
  Vocabulary v;
  v.concepts = spec.concepts ? spec.concepts : std::max<std::size_t>(12, 2 * spec.strata + 2);
  v.roles = std::max<std::size_t>(3, spec.roles);
  for (std::size_t i = 0; i < v.concepts; ++i) v.group[i % 2].push_back(i);
  return v;
}

TBox template_tbox(const Vocabulary& v) {
  TBox t;
  auto atomic = [](std::size_t i) { return BasicConcept::atomic(concept_name(i)); };
  Symbol top("Top");
  for (std::size_t i = 2; i < v.concepts; ++i) t.add(ConceptInclusion{atomic(i), atomic(i - 2), false});
  t.add(ConceptInclusion{atomic(0), BasicConcept::atomic(top), false});
  t.add(ConceptInclusion{atomic(1), BasicConcept::atomic(top), false});
  // Closes to: every even concept is disjoint from every odd one.
  t.add(ConceptInclusion{atomic(0), atomic(1), true});
  Role r0{role_name(0), false};
  Role r1{role_name(1), false};
  Role r2{role_name(2), false};
  t.add(ConceptInclusion{BasicConcept::exists(r0), atomic(0), false});
  t.add(RoleInclusion{r1, r0, false});
  t.add(ConceptInclusion{atomic(0), BasicConcept::exists(r2), false});
  t.add(ConceptInclusion{atomic(1), BasicConcept::exists(r2), false});
  for (std::size_t j = 3; j < v.roles; ++j) t.add(RoleInclusion{Role{role_name(j), false}, r2, false});
  return t;
}

}  // namespace

PrioritizedKB generate(const GenSpec& spec) {
  const std::size_t n = spec.assertions;
  const std::size_t m = spec.strata;
  const std::size_t k = spec.conflicts;
  if (m == 0) throw InfeasibleSpecError("at least one stratum is required");
  if (k > 0 && m < 2) throw InfeasibleSpecError("conflicts need at least two strata to keep every stratum consistent");
  Vocabulary v = vocabulary(spec);
  if (v.concepts < 2) throw InfeasibleSpecError("at least two concepts are required");
  const std::size_t smaller_group = std::min(v.group[0].size(), v.group[1].size());
  if (k > 0 && smaller_group < 1) throw InfeasibleSpecError("conflicts need concepts of both parities");

  std::mt19937_64 rng(spec.seed);
  std::vector<std::vector<Assertion>> strata(m);
  std::size_t next_individual = 0;

  // Conflict stars: a hub and 1..3 spokes of the opposite parity on one
  // individual, each spoke in a stratum other than the hub's.
  const std::size_t max_spokes = std::min<std::size_t>(3, smaller_group);
  std::size_t remaining = k;
  std::size_t used = 0;
  while (remaining > 0) {
    std::size_t spokes = std::min(remaining, 1 + pick(rng, max_spokes));
    remaining -= spokes;
    used += spokes + 1;
    if (used > n) throw InfeasibleSpecError("assertion budget too small for " + std::to_string(k) + " conflicts");
    Symbol ind = individual_name(next_individual++);
    std::size_t parity = pick(rng, 2);
    const auto& hubs = v.group[parity];
    std::vector<std::size_t> spoke_pool = v.group[1 - parity];
    shuffle(spoke_pool, rng);
    std::size_t hub_stratum = pick(rng, m);
    strata[hub_stratum].push_back(Assertion::concept_assertion(concept_name(hubs[pick(rng, hubs.size())]), ind));
    for (std::size_t s = 0; s < spokes; ++s) {
      std::size_t st = pick(rng, m - 1);
      if (st >= hub_stratum) ++st;
      strata[st].push_back(Assertion::concept_assertion(concept_name(spoke_pool[s]), ind));
    }
  }

  // Free individuals: one own-parity concept per stratum, all distinct.
  const std::size_t budget = n - used;
  std::size_t free_count = spec.individuals ? spec.individuals : (budget * 3 / 5) / m;
  if (budget > 0 && free_count == 0 && next_individual == 0) free_count = 1;
  if (free_count * m > budget) throw InfeasibleSpecError("assertion budget too small for the requested individuals");
  if (free_count > 0 && std::max(v.group[0].size(), v.group[1].size()) < m)
    throw InfeasibleSpecError("too few concepts for one distinct concept per stratum");
  std::vector<Symbol> even_free;
  std::vector<Symbol> everyone;
  for (std::size_t i = 0; i < next_individual; ++i) everyone.push_back(individual_name(i));
  for (std::size_t f = 0; f < free_count; ++f) {
    Symbol ind = individual_name(next_individual++);
    std::size_t parity = v.group[1].size() < m ? 0 : (v.group[0].size() < m ? 1 : pick(rng, 2));
    std::vector<std::size_t> pool = v.group[parity];
    shuffle(pool, rng);
    for (std::size_t s = 0; s < m; ++s) strata[s].push_back(Assertion::concept_assertion(concept_name(pool[s]), ind));
    if (parity == 0) even_free.push_back(ind);
    everyone.push_back(ind);
  }
  used += free_count * m;

  // Role assertions fill the budget. R0 and R1 only leave even free
  // individuals, since their domain is even.
  std::size_t roles_needed = n - used;
  if (roles_needed > 0) {
    if (everyone.empty()) throw InfeasibleSpecError("no individuals to attach role assertions to");
    std::size_t capacity = (v.roles - 2) * everyone.size() * everyone.size() + 2 * even_free.size() * everyone.size();
    if (roles_needed > capacity) throw InfeasibleSpecError("too few individuals for the role assertions");
  }
  std::set<Assertion> seen_roles;
  while (roles_needed > 0) {
    std::size_t r = pick(rng, v.roles);
    Symbol subject;
    if (r < 2) {
      if (even_free.empty()) continue;
      subject = even_free[pick(rng, even_free.size())];
    } else {
      subject = everyone[pick(rng, everyone.size())];
    }
    Symbol object = everyone[pick(rng, everyone.size())];
    Assertion a = Assertion::role_assertion(role_name(r), subject, object);
    if (!seen_roles.insert(a).second) continue;
    strata[pick(rng, m)].push_back(a);
    --roles_needed;
  }

  std::vector<AssertionSet> sets;
  sets.reserve(m);
  for (auto& s : strata) sets.emplace_back(std::move(s));
  return PrioritizedKB::build(template_tbox(v), std::move(sets));
}

std::vector<ConjunctiveQuery> bench_queries(const GenSpec& spec, const PrioritizedKB& kb) {
  Symbol top("Top");
  Symbol x("x");
  Symbol y("y");
  std::vector<ConjunctiveQuery> out;
  out.emplace_back(Symbol("q"), std::vector<Term>{Term::var(x)}, std::vector<QueryAtom>{{top, {Term::var(x)}}});
  out.emplace_back(Symbol("q"), std::vector<Term>{Term::var(x)},
                   std::vector<QueryAtom>{{top, {Term::var(x)}}, {role_name(2), {Term::var(x), Term::var(y)}}});

  std::set<Symbol> individuals;
  for (const auto& a : kb.all_assertions()) {
    individuals.insert(a.subject());
    if (!a.is_concept()) individuals.insert(a.object());
  }
  std::vector<Symbol> pool(individuals.begin(), individuals.end());
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
  shuffle(pool, rng);
  pool.resize(std::min<std::size_t>(pool.size(), 30));
  std::sort(pool.begin(), pool.end());
  for (Symbol ind : pool)
    out.emplace_back(Symbol("q"), std::vector<Term>{}, std::vector<QueryAtom>{{top, {Term::constant(ind)}}});
  return out;
}

namespace {

Ratio divide(double num, double den) {
  if (den == 0.0) return Ratio{0.0, true};
  return Ratio{num / den, false};
}

}  // namespace

void Metrics::recompute() {
  precision = divide(static_cast<double>(cr), static_cast<double>(cr + ir));
  recall = divide(static_cast<double>(cr), static_cast<double>(cr + cnr));
  double p = precision.value;
  double r = recall.value;
  f_measure = p + r == 0.0 ? Ratio{0.0, true} : Ratio{2.0 * p * r / (p + r), false};
}

Metrics& Metrics::operator+=(const Metrics& other) {
  cr += other.cr;
  cnr += other.cnr;
  ir += other.ir;
  inr += other.inr;
  recompute();
  return *this;
}

Metrics metrics(const Reasoner& reasoner, const AssertionSet& universe, const AssertionSet& retained) {
  if (!retained.is_subset_of(universe)) throw UsageError("retained assertions must be a subset of the universe");
  AssertionSet clean = reasoner.free_set(universe);
  Metrics out;
  for (const auto& a : universe) {
    bool kept = retained.contains(a);
    if (clean.contains(a)) {
      ++(kept ? out.cr : out.cnr);
    } else {
      ++(kept ? out.ir : out.inr);
    }
  }
  out.recompute();
  return out;
}

Ratio productivity(std::size_t all_answers, std::size_t retained_answers) {
  return divide(static_cast<double>(retained_answers), static_cast<double>(all_answers));
}

Ratio productivity(const AnswerProfile& profile, const std::vector<AnswerTuple>& retained_answers) {
  return productivity(profile.all_answers().size(), retained_answers.size());
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct QueryRun {
  AssertionSet universe;
  AssertionSet retained;
  std::size_t raw = 0;
  std::size_t kept = 0;
};

}  // namespace

std::vector<BenchCell> bench(const GenSpec& spec, const PrioritizedKB& kb, const std::vector<ConjunctiveQuery>& queries,
                             const BenchOptions& options) {
  if (options.repetitions < 3) throw UsageError("bench needs at least 3 repetitions");
  using Clock = std::chrono::steady_clock;

  // Shared by both pipelines and kept out of every timed region.
  Reasoner reasoner(kb.tbox());
  std::vector<AssertionStore> stores;
  for (std::size_t i = 1; i <= kb.strata_count(); ++i) stores.emplace_back(kb.stratum(i));
  AssertionSet all = kb.all_assertions();
  AssertionStore global(all);
  std::vector<PreparedQuery> prepared;
  for (const auto& q : queries) prepared.emplace_back(q, kb.tbox());
  std::vector<std::size_t> raw_before;
  for (const auto& p : prepared) raw_before.push_back(evaluate(p.rewriting, global).size());

  std::vector<BenchCell> cells;
  for (QueryKind kind : {QueryKind::kInstance, QueryKind::kConjunctive, QueryKind::kGround}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < queries.size(); ++i)
      if (queries[i].kind() == kind) members.push_back(i);
    if (members.empty()) continue;

    for (Strategy strategy : options.strategies) {
      for (Pipeline pipeline : options.pipelines) {
        BenchCell cell;
        cell.conflicts = spec.conflicts;
        cell.strata = kb.strata_count();
        cell.query_kind = kind;
        cell.strategy = strategy;
        cell.pipeline = pipeline;
        std::vector<QueryRun> runs(members.size());

        for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
          auto start = Clock::now();
          if (pipeline == Pipeline::kAfterQuery) {
            for (std::size_t j = 0; j < members.size(); ++j) {
              AnswerProfile profile = answer_profile(prepared[members[j]], stores, options.mode);
              StratifiedAssertions supports = profile.supports();
              Repair repair = run_strategy(strategy, reasoner, supports);
              auto answers = answers_from_assertions(profile, repair.assertions);
              runs[j].retained = std::move(repair.assertions);
              runs[j].kept = answers.size();
              runs[j].raw = profile.all_answers().size();
              if (rep == 0) runs[j].universe = supports.union_all();
            }
          } else {
            Repair repair = run_strategy(strategy, reasoner, kb.profile());
            AssertionFilter in_repair = [&](const Assertion& a) { return repair.assertions.contains(a); };
            for (std::size_t j = 0; j < members.size(); ++j) {
              runs[j].kept = evaluate(prepared[members[j]].rewriting, global, in_repair).size();
            }
            for (auto& run : runs) {
              run.retained = repair.assertions;
              run.raw = 0;
            }
          }
          cell.times_ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
        }
        cell.median_ms = median(cell.times_ms);

        for (std::size_t j = 0; j < members.size(); ++j) {
          if (pipeline == Pipeline::kBeforeQuery) {
            runs[j].universe = all;
            runs[j].raw = raw_before[members[j]];
          }
          cell.metrics += metrics(reasoner, runs[j].universe, runs[j].retained);
          cell.raw_answers += runs[j].raw;
          cell.retained_answers += runs[j].kept;
        }
        cell.productivity = productivity(cell.raw_answers, cell.retained_answers);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::vector<BenchCell> bench(const GenSpec& spec, const BenchOptions& options) {
  PrioritizedKB kb = generate(spec);
  return bench(spec, kb, bench_queries(spec, kb), options);
}

void write_bench_csv_preamble(std::ostream& out, const GenSpec& spec, const std::vector<std::size_t>& conflict_sizes) {
  out << "# seed=" << spec.seed << "\n";
  out << "# assertions=" << spec.assertions << " strata=" << spec.strata << " conflicts=";
  for (std::size_t i = 0; i < conflict_sizes.size(); ++i) out << (i ? "," : "") << conflict_sizes[i];
  out << " concepts=" << spec.concepts << " roles=" << spec.roles << " individuals=" << spec.individuals << "\n";
  out << "# productivity=retained answers / answers ignoring consistency\n";
}

void write_bench_csv_rows(std::ostream& out, const std::vector<BenchCell>& cells) {
  char buf[512];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%s,%s,%s,%.6f,%.6f,%.6f,%.6f,%.3f\n", c.conflicts, c.strata,
                  to_string(c.query_kind), to_string(c.strategy), to_string(c.pipeline), c.metrics.precision.value,
                  c.metrics.recall.value, c.metrics.f_measure.value, c.productivity.value, c.median_ms);
    out << buf;
  }
}

void write_bench_csv(std::ostream& out, const GenSpec& spec, const std::vector<BenchCell>& cells, bool echo_spec) {
  if (echo_spec) write_bench_csv_preamble(out, spec, {spec.conflicts});
  out << kBenchCsvHeader << "\n";
  write_bench_csv_rows(out, cells);
}

}  // namespace literepair
