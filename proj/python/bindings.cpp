#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "literepair/error.hpp"
#include "literepair/eval.hpp"
#include "literepair/reasoner.hpp"
#include "literepair/repair.hpp"
#include "literepair/textio.hpp"

namespace py = pybind11;
using namespace literepair;

namespace {

std::vector<std::string> texts(const AssertionSet& set) {
  std::vector<std::string> out;
  for (const auto& a : set) out.push_back(a.to_string());
  return out;
}

std::vector<std::string> texts(const std::vector<Assertion>& items) {
  std::vector<std::string> out;
  for (const auto& a : items) out.push_back(a.to_string());
  return out;
}

py::tuple tuple_of(const AnswerTuple& t) {
  py::tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].str();
  return out;
}

py::list answers_of(const std::vector<AnswerTuple>& answers) {
  py::list out;
  for (const auto& t : answers) out.append(tuple_of(t));
  return out;
}

Strategy strategy_of(const std::string& name) {
  if (auto s = parse_strategy(name)) return *s;
  throw UsageError("unknown strategy '" + name + "' (pi, linear, nd)");
}

Pipeline pipeline_of(const std::string& name) {
  if (auto p = parse_pipeline(name)) return *p;
  throw UsageError("unknown pipeline '" + name + "' (after-query, before-query)");
}

SupportMode mode_of(const std::string& name) {
  if (name == "about-answers") return SupportMode::kAboutAnswers;
  if (name == "instantiation") return SupportMode::kInstantiation;
  throw UsageError("unknown support mode '" + name + "' (about-answers, instantiation)");
}

// Strata to repair: the KB itself, or the support profile of a query.
StratifiedAssertions strata_for(const PrioritizedKB& kb, const ConjunctiveQuery* query, const std::string& mode) {
  if (!query) return kb.profile();
  return answer_profile(*query, kb, mode_of(mode)).supports();
}

AssertionSet lookup(const PrioritizedKB& kb, const std::vector<std::string>& items) {
  std::map<std::string, Assertion> known;
  for (const auto& a : kb.all_assertions()) known.emplace(a.to_string(), a);
  std::vector<Assertion> out;
  for (const auto& text : items) {
    auto it = known.find(text);
    if (it == known.end()) throw UsageError("assertion " + text + " is not in the KB");
    out.push_back(it->second);
  }
  return AssertionSet(std::move(out));
}

py::dict ratio_dict(const Ratio& r) {
  py::dict d;
  d["value"] = r.value;
  d["undefined"] = r.undefined;
  return d;
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["cr"] = m.cr;
  d["cnr"] = m.cnr;
  d["ir"] = m.ir;
  d["inr"] = m.inr;
  d["precision"] = m.precision.value;
  d["recall"] = m.recall.value;
  d["f_measure"] = m.f_measure.value;
  d["precision_undefined"] = m.precision.undefined;
  d["recall_undefined"] = m.recall.undefined;
  d["f_measure_undefined"] = m.f_measure.undefined;
  return d;
}

GenSpec spec_of(std::size_t assertions, std::size_t strata, std::size_t conflicts, std::uint64_t seed,
                std::size_t concepts, std::size_t roles, std::size_t individuals) {
  return GenSpec{assertions, strata, conflicts, concepts, roles, individuals, seed};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Query answering over prioritized, possibly inconsistent DL-Lite knowledge bases";

  static py::exception<Error> error(m, "LiteRepairError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object instance = exc(e.what());
      instance.attr("code") = e.code();
      PyErr_SetObject(exc.ptr(), instance.ptr());
    }
  });

  py::class_<PrioritizedKB>(m, "KB")
      .def_property_readonly("strata_count", &PrioritizedKB::strata_count)
      .def(
          "stratum", [](const PrioritizedKB& kb, std::size_t i) { return texts(kb.stratum(i)); }, py::arg("i"),
          "Assertions of stratum i (1-based), sorted.")
      .def("assertions", [](const PrioritizedKB& kb) { return texts(kb.all_assertions()); })
      .def("to_text", &emit_kb, "Canonical .dlkb text.")
      .def("__eq__", [](const PrioritizedKB& a, const PrioritizedKB& b) { return a == b; })
      .def("__repr__", [](const PrioritizedKB& kb) {
        return "<KB strata=" + std::to_string(kb.strata_count()) +
               " assertions=" + std::to_string(kb.all_assertions().size()) + ">";
      });

  py::class_<ConjunctiveQuery>(m, "Query")
      .def_property_readonly("kind", [](const ConjunctiveQuery& q) { return std::string(to_string(q.kind())); })
      .def("__str__", &ConjunctiveQuery::to_string)
      .def("__repr__", [](const ConjunctiveQuery& q) { return "<Query " + q.to_string() + ">"; });

  m.def("parse_kb", [](const std::string& text) { return parse_kb(text); }, py::arg("text"));
  m.def("parse_query", [](const std::string& text) { return parse_query(text); }, py::arg("text"));

  m.def(
      "is_consistent",
      [](const PrioritizedKB& kb) { return Reasoner(kb.tbox()).is_consistent(kb.all_assertions()); },
      py::arg("kb"), "Whether the union of all strata is consistent.");
  m.def(
      "conflicts",
      [](const PrioritizedKB& kb, const ConjunctiveQuery* query, const std::string& mode) {
        std::vector<std::vector<std::string>> out;
        for (const auto& c : Reasoner(kb.tbox()).conflicts(strata_for(kb, query, mode).union_all()))
          out.push_back(texts(c.members));
        return out;
      },
      py::arg("kb"), py::arg("query") = nullptr, py::arg("mode") = "about-answers");
  m.def(
      "free_set",
      [](const PrioritizedKB& kb, const ConjunctiveQuery* query, const std::string& mode) {
        return texts(Reasoner(kb.tbox()).free_set(strata_for(kb, query, mode).union_all()));
      },
      py::arg("kb"), py::arg("query") = nullptr, py::arg("mode") = "about-answers");
  m.def(
      "cns_rank",
      [](const PrioritizedKB& kb, const ConjunctiveQuery* query, const std::string& mode) {
        RankResult r = cns_rank(Reasoner(kb.tbox()), strata_for(kb, query, mode));
        return py::make_tuple(r.rank, r.checks);
      },
      py::arg("kb"), py::arg("query") = nullptr, py::arg("mode") = "about-answers",
      "(rank, checks) for the KB strata, or for the query's support strata.");
  m.def(
      "nd_prefix_table",
      [](const PrioritizedKB& kb, const ConjunctiveQuery* query, const std::string& mode) {
        std::vector<std::vector<std::string>> out;
        for (const auto& row : nd_prefix_table(Reasoner(kb.tbox()), strata_for(kb, query, mode)))
          out.push_back(texts(row));
        return out;
      },
      py::arg("kb"), py::arg("query") = nullptr, py::arg("mode") = "about-answers");

  m.def(
      "answer_profile",
      [](const PrioritizedKB& kb, const ConjunctiveQuery& query, const std::string& mode) {
        py::list out;
        for (const auto& s : answer_profile(query, kb, mode_of(mode)).strata) {
          py::dict d;
          d["answers"] = answers_of(s.answers);
          d["support"] = texts(s.support);
          out.append(d);
        }
        return out;
      },
      py::arg("kb"), py::arg("query"), py::arg("mode") = "about-answers");

  m.def(
      "repair",
      [](const PrioritizedKB& kb, const ConjunctiveQuery& query, const std::string& strategy,
         const std::string& pipeline, const std::string& mode) {
        RepairOutcome o = repair_answers(query, kb, strategy_of(strategy), pipeline_of(pipeline), mode_of(mode));
        py::dict d;
        d["strategy"] = to_string(o.repair.strategy);
        d["pipeline"] = to_string(o.repair.pipeline);
        d["rank"] = o.repair.rank;
        d["checks"] = o.repair.checks;
        d["repair"] = texts(o.repair.assertions);
        d["answers"] = answers_of(o.answers);
        d["raw_answers"] = answers_of(o.raw_answers);
        d["productivity"] = ratio_dict(productivity(o.raw_answers.size(), o.answers.size()));
        return d;
      },
      py::arg("kb"), py::arg("query"), py::arg("strategy") = "nd", py::arg("pipeline") = "after-query",
      py::arg("mode") = "about-answers");

  m.def(
      "metrics",
      [](const PrioritizedKB& kb, const std::vector<std::string>& universe, const std::vector<std::string>& retained) {
        return metrics_dict(metrics(Reasoner(kb.tbox()), lookup(kb, universe), lookup(kb, retained)));
      },
      py::arg("kb"), py::arg("universe"), py::arg("retained"),
      "Retrieval counts and ratios; assertions are given in their printed form.");

  m.def(
      "generate",
      [](std::size_t assertions, std::size_t strata, std::size_t conflicts, std::uint64_t seed, std::size_t concepts,
         std::size_t roles, std::size_t individuals) {
        return generate(spec_of(assertions, strata, conflicts, seed, concepts, roles, individuals));
      },
      py::arg("assertions"), py::arg("strata"), py::arg("conflicts"), py::arg("seed") = 1, py::arg("concepts") = 0,
      py::arg("roles") = 0, py::arg("individuals") = 0);

  m.def(
      "bench",
      [](std::size_t assertions, std::size_t strata, std::size_t conflicts, std::uint64_t seed,
         std::size_t repetitions, std::optional<std::vector<std::string>> strategies,
         std::optional<std::vector<std::string>> pipelines, const std::string& mode) {
        BenchOptions options;
        options.repetitions = repetitions;
        options.mode = mode_of(mode);
        if (strategies) {
          options.strategies.clear();
          for (const auto& s : *strategies) options.strategies.push_back(strategy_of(s));
        }
        if (pipelines) {
          options.pipelines.clear();
          for (const auto& p : *pipelines) options.pipelines.push_back(pipeline_of(p));
        }
        GenSpec spec = spec_of(assertions, strata, conflicts, seed, 0, 0, 0);
        std::vector<BenchCell> cells;
        {
          py::gil_scoped_release release;
          cells = bench(spec, options);
        }
        py::list out;
        for (const auto& c : cells) {
          py::dict d = metrics_dict(c.metrics);
          d["conflict_size"] = c.conflicts;
          d["strata"] = c.strata;
          d["query_kind"] = to_string(c.query_kind);
          d["strategy"] = to_string(c.strategy);
          d["pipeline"] = to_string(c.pipeline);
          d["productivity"] = c.productivity.value;
          d["raw_answers"] = c.raw_answers;
          d["retained_answers"] = c.retained_answers;
          d["median_ms"] = c.median_ms;
          d["times_ms"] = c.times_ms;
          out.append(d);
        }
        return out;
      },
      py::arg("assertions"), py::arg("strata"), py::arg("conflicts"), py::arg("seed") = 1,
      py::arg("repetitions") = 5, py::arg("strategies") = py::none(), py::arg("pipelines") = py::none(),
      py::arg("mode") = "about-answers");
}
