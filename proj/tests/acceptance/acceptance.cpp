// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "literepair/eval.hpp"
#include "literepair/repair.hpp"
#include "properties.hpp"

using namespace literepair;
using namespace literepair::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

class Checker {
 public:
  template <class T>
  void equal(const std::string& what, const T& got, const T& want) {
    if (got == want) return;
    failures_.push_back(what);
  }
  void expect(const std::string& what, bool ok) {
    if (!ok) failures_.push_back(what);
  }
  void near(const std::string& what, double got, double want) {
    if (std::fabs(got - want) > 1e-9) failures_.push_back(what + " got " + std::to_string(got));
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

void report(const char* id, const std::string& title, const Checker& c, const std::string& extra = "") {
  std::cout << id << " " << title << ": " << (c.ok() ? "PASS" : "FAIL");
  if (!extra.empty()) std::cout << " (" << extra << ")";
  std::cout << "\n";
  for (const auto& f : c.failures()) std::cout << "    " << f << "\n";
}

std::vector<Conflict> conflict_list(std::initializer_list<AssertionSet> sets) {
  std::vector<Conflict> out;
  for (const auto& s : sets) out.push_back(Conflict{s.items()});
  std::sort(out.begin(), out.end());
  return out;
}

bool worked_example() {
  auto start = Clock::now();
  Checker c;
  Reasoner r(ex_tbox());
  StratifiedAssertions qps = answer_profile(ex_query(), ex_kb()).supports();
  StratifiedAssertions ps = ex_kb().profile();
  c.equal("q_Ps strata", qps.strata(), ex_qps().strata());

  c.equal("conflicts(q_Ps)", r.conflicts(qps.union_all()),
          conflict_list({{C("A", "a"), C("B", "a")}, {C("A", "e"), C("E", "e")}}));
  c.equal("conflicts(P_s)", r.conflicts(ps.union_all()),
          conflict_list({{C("A", "a"), C("B", "a")}, {C("A", "e"), C("E", "e")}, {C("A", "c"), C("B", "c")}}));
  c.equal("free(q_Ps)", r.free_set(qps.union_all()), AssertionSet{C("A", "b"), C("A", "c")});
  c.equal("free(P_s)", r.free_set(ps.union_all()),
          AssertionSet{R("R", "a", "z"), R("R", "b", "z"), C("A", "b"), R("R", "e", "z"), R("R", "c", "z")});
  c.equal("rank(q_Ps)", cns_rank(r, qps).rank, std::size_t{2});
  c.equal("rank(P_s)", cns_rank(r, ps).rank, std::size_t{1});

  c.equal("pi(q_Ps)", pi_repair(r, qps).assertions, AssertionSet{C("A", "a"), C("A", "b")});
  c.equal("linear(q_Ps)", linear_repair(r, qps).assertions, AssertionSet{C("A", "a"), C("A", "b"), C("E", "e")});
  c.equal("nd(q_Ps)", nd_repair(r, qps).assertions, AssertionSet{C("A", "a"), C("A", "b"), C("E", "e"), C("A", "c")});
  c.equal("pi(P_s)", pi_repair(r, ps).assertions, AssertionSet{C("A", "a"), R("R", "a", "z"), C("A", "c")});
  c.equal("linear(P_s)", linear_repair(r, ps).assertions,
          AssertionSet{C("A", "a"), R("R", "a", "z"), C("A", "c"), R("R", "e", "z"), C("E", "e")});
  c.equal("nd(P_s)", nd_repair(r, ps).assertions, ex_ps_table().back());

  c.equal("pi before-query answers",
          repair_answers(ex_query(), ex_kb(), Strategy::kPossibilistic, Pipeline::kBeforeQuery).answers, unary({"a"}));
  c.equal("linear before-query answers",
          repair_answers(ex_query(), ex_kb(), Strategy::kLinear, Pipeline::kBeforeQuery).answers, unary({"a", "e"}));

  auto qrows = nd_prefix_table(r, qps);
  auto prows = nd_prefix_table(r, ps);
  for (std::size_t k = 0; k < 5; ++k) {
    c.expect("q_Ps table row " + std::to_string(k + 1), k < qrows.size() && qrows[k] == ex_qps_table()[k]);
    c.expect("P_s table row " + std::to_string(k + 1), k < prows.size() && prows[k] == ex_ps_table()[k]);
  }
  double secs = seconds_since(start);
  c.expect("runs under 1 s", secs < 1.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f s", secs);
  report("AC1", "worked example", c, buf);
  return c.ok();
}

bool properties() {
  auto start = Clock::now();
  Checker c;
  std::size_t instances = 0;
  for (const auto& prop : all_properties()) {
    PropertyResult p = prop();
    instances += p.instances;
    c.expect(p.name + ": " + std::to_string(p.failures) + "/" + std::to_string(p.instances) + " failed; " +
                 p.first_failure,
             p.ok() && p.instances >= kInstances);
  }
  double secs = seconds_since(start);
  c.expect("total runtime under 60 s", secs < 60.0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu instances, %.1f s", instances, secs);
  report("AC2", "property suites", c, buf);
  return c.ok();
}

struct Key {
  std::size_t k;
  QueryKind kind;
  Strategy strategy;
  Pipeline pipeline;
  auto operator<=>(const Key&) const = default;
};

std::map<Key, BenchCell> run_benches(std::uint64_t seed) {
  std::map<Key, BenchCell> out;
  BenchOptions opts;
  opts.repetitions = 5;
  for (std::size_t k : {50u, 200u, 500u}) {
    GenSpec spec;
    spec.assertions = 1000;
    spec.strata = 5;
    spec.conflicts = k;
    spec.seed = seed;
    for (auto& cell : bench(spec, opts)) out.emplace(Key{k, cell.query_kind, cell.strategy, cell.pipeline}, cell);
  }
  return out;
}

constexpr Strategy kStrategies[] = {Strategy::kPossibilistic, Strategy::kLinear, Strategy::kNonDefeated};
constexpr Pipeline kPipelines[] = {Pipeline::kAfterQuery, Pipeline::kBeforeQuery};
constexpr QueryKind kKinds[] = {QueryKind::kInstance, QueryKind::kConjunctive, QueryKind::kGround};
constexpr std::size_t kSizes[] = {50, 200, 500};

void print_grid(const std::map<Key, BenchCell>& cells) {
  std::cout << "    k    kind         strategy pipeline      P        R        F        prod     median_ms\n";
  for (const auto& [key, c] : cells) {
    std::printf("    %-4zu %-12s %-8s %-13s %.4f   %.4f   %.4f   %.4f   %.3f\n", key.k, to_string(key.kind),
                to_string(key.strategy), to_string(key.pipeline), c.metrics.precision.value, c.metrics.recall.value,
                c.metrics.f_measure.value, c.productivity.value, c.median_ms);
  }
}

bool runtime_trend(const std::map<Key, BenchCell>& cells) {
  Checker c;
  for (std::size_t k : kSizes)
    for (QueryKind kind : kKinds)
      for (Strategy s : kStrategies) {
        const BenchCell& after = cells.at({k, kind, s, Pipeline::kAfterQuery});
        const BenchCell& before = cells.at({k, kind, s, Pipeline::kBeforeQuery});
        char buf[160];
        std::snprintf(buf, sizeof buf, "k=%zu %s %s: after %.3f ms vs before %.3f ms", k, to_string(kind),
                      to_string(s), after.median_ms, before.median_ms);
        c.expect(buf, after.median_ms < before.median_ms);
      }
  report("AC3", "after-query faster than before-query", c);
  return c.ok();
}

bool metric_trends(const std::map<Key, BenchCell>& cells) {
  Checker c;
  auto f = [&](std::size_t k, QueryKind kind, Strategy s, Pipeline p) {
    return cells.at({k, kind, s, p}).metrics.f_measure.value;
  };
  for (std::size_t k : kSizes)
    for (QueryKind kind : kKinds)
      for (Pipeline p : kPipelines) {
        double pi = f(k, kind, Strategy::kPossibilistic, p);
        double lin = f(k, kind, Strategy::kLinear, p);
        double nd = f(k, kind, Strategy::kNonDefeated, p);
        char buf[160];
        std::snprintf(buf, sizeof buf, "k=%zu %s %s: F nd %.6f >= linear %.6f >= pi %.6f", k, to_string(kind),
                      to_string(p), nd, lin, pi);
        c.expect(buf, nd >= lin && lin >= pi);
      }
  for (QueryKind kind : kKinds)
    for (Strategy s : kStrategies)
      for (Pipeline p : kPipelines)
        for (std::size_t i = 1; i < std::size(kSizes); ++i) {
          const BenchCell& lo = cells.at({kSizes[i - 1], kind, s, p});
          const BenchCell& hi = cells.at({kSizes[i], kind, s, p});
          struct Named {
            const char* name;
            double lo, hi;
          };
          for (const Named& m : {Named{"precision", lo.metrics.precision.value, hi.metrics.precision.value},
                                 Named{"recall", lo.metrics.recall.value, hi.metrics.recall.value},
                                 Named{"f_measure", lo.metrics.f_measure.value, hi.metrics.f_measure.value},
                                 Named{"productivity", lo.productivity.value, hi.productivity.value}}) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%s %s %s %s: k=%zu %.6f -> k=%zu %.6f", to_string(kind), to_string(s),
                          to_string(p), m.name, kSizes[i - 1], m.lo, kSizes[i], m.hi);
            c.expect(buf, m.hi <= m.lo + 1e-12);
          }
        }
  report("AC4", "metric trends", c);
  return c.ok();
}

bool metric_units() {
  Checker c;
  Reasoner r(ex_tbox());
  AssertionSet universe = ex_qps().union_all();
  Metrics nd = metrics(r, universe, AssertionSet{C("A", "a"), C("A", "b"), C("E", "e"), C("A", "c")});
  c.equal("CR", nd.cr, std::size_t{2});
  c.equal("IR", nd.ir, std::size_t{2});
  c.equal("CNR", nd.cnr, std::size_t{0});
  c.equal("INR", nd.inr, std::size_t{2});
  c.near("P", nd.precision.value, 0.5);
  c.near("R", nd.recall.value, 1.0);
  c.near("F", nd.f_measure.value, 2.0 / 3.0);

  Metrics none = metrics(r, universe, AssertionSet{});
  c.equal("empty CR+IR", none.cr + none.ir, std::size_t{0});
  c.near("empty P", none.precision.value, 0.0);
  c.expect("empty P flagged", none.precision.undefined);
  c.near("empty R", none.recall.value, 0.0);

  Metrics perfect = metrics(r, universe, r.free_set(universe));
  c.near("perfect P", perfect.precision.value, 1.0);
  c.near("perfect R", perfect.recall.value, 1.0);
  c.near("perfect F", perfect.f_measure.value, 1.0);
  report("AC5", "metric units", c);
  return c.ok();
}

}  // namespace

int main() {
  bool ok = true;
  ok &= worked_example();
  ok &= properties();
  auto start = Clock::now();
  auto cells = run_benches(20240601);
  std::printf("    bench grid (N=1000, m=5, seed=20240601, 5 repetitions, %.1f s)\n", seconds_since(start));
  print_grid(cells);
  ok &= runtime_trend(cells);
  ok &= metric_trends(cells);
  ok &= metric_units();
  std::cout << (ok ? "ALL PASS" : "SOME CRITERIA FAILED") << "\n";
  return ok ? 0 : 1;
}
