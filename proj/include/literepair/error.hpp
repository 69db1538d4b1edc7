#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace literepair {

// Base for every error raised by the library. code() is a short, stable,
// greppable identifier used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("E_PARSE", std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A name used in two of the concept / role / individual namespaces.
class NamespaceError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A stratum that is inconsistent with the TBox on its own. witness() holds
// the rendered assertions of one conflict inside that stratum.
class InconsistentStratumError : public Error {
 public:
  InconsistentStratumError(std::size_t stratum, std::vector<std::string> witness, const std::string& what)
      : Error("E_STRATUM", what), stratum_(stratum), witness_(std::move(witness)) {}
  std::size_t stratum() const { return stratum_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::size_t stratum_;
  std::vector<std::string> witness_;
};

class InfeasibleSpecError : public Error {
 public:
  explicit InfeasibleSpecError(const std::string& what) : Error("E_INFEASIBLE", what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("E_USAGE", what) {}
};

// Raised by the exhaustive oracles when an input exceeds their size guard.
class OracleGuardError : public Error {
 public:
  explicit OracleGuardError(const std::string& what) : Error("E_ORACLE_GUARD", what) {}
};

}  // namespace literepair
