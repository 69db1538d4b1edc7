#pragma once

// Text formats.
//
// KB files (.dlkb):
//
//   % comment to end of line
//   [tbox]
//   A <= !B
//   exists R- <= A
//   role R <= P
//   [stratum 1]
//   A(a)
//   R(a, z)
//
// Query files (.dlq):   q(?x) :- R(?x, z), A(?x)
//
// Names are implicitly declared on first use; arity decides concept vs role
// and a name may live in only one of the concept, role and individual
// namespaces.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "literepair/eval.hpp"
#include "literepair/model.hpp"
#include "literepair/query.hpp"
#include "literepair/reasoner.hpp"
#include "literepair/repair.hpp"

namespace literepair {

// Throws ParseError / NamespaceError (with line and column) and
// InconsistentStratumError.
PrioritizedKB parse_kb(std::string_view text);
ConjunctiveQuery parse_query(std::string_view text);

// Canonical form: axioms and assertions sorted, one per line.
std::string emit_kb(const PrioritizedKB& kb);

// Everything a report may contain; absent fields are not printed.
struct Report {
  std::string command;
  std::optional<Strategy> strategy;
  std::optional<Pipeline> pipeline;
  std::optional<SupportMode> mode;
  std::optional<std::string> query;
  // Command-specific lines, printed in order after the query.
  std::vector<std::pair<std::string, std::string>> details;
  std::optional<std::size_t> rank;
  std::optional<std::size_t> checks;
  std::optional<AssertionSet> repair;
  std::optional<std::vector<AnswerTuple>> answers;
  std::optional<std::vector<AnswerTuple>> raw_answers;
  std::optional<Ratio> productivity;
  std::optional<Metrics> metrics;
  std::optional<double> elapsed_ms;
};

// key: value lines; sets are rendered sorted as {x, y}; ratios with six
// decimals. Byte-for-byte deterministic apart from elapsed_ms.
std::string emit_report(const Report& report);

}  // namespace literepair
