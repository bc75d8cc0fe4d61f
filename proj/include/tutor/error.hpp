#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tutor {

/// Error codes surfaced by every module. The names double as the
/// machine-readable "code" field of HTTP error bodies.
enum class Errc {
  ParseError,
  ValidationError,
  UnknownItem,
  UnknownOption,
  DuplicateAnswer,
  OutOfRange,
  NoActivePhase,
  EmptyPhase,
  InsufficientQuestions,
  LengthMismatch,
  InvalidArgument,
  ConceptNotEligible,
  ActiveSessionExists,
  SessionTerminal,
  WrongInputKind,
  ChoiceOutOfRange,
  EmptyPayload,
  NonPrintable,
  TooLong,
  MissingSegment,
  DuplicateSegment,
  InconsistentTotal,
  SequenceConflict,
  IoFailure,
  UnknownLearner,
  UnknownSession,
  UnknownConcept,
  CorruptLog,
  ConfigError,
};

std::string_view to_string(Errc code);

/// Every code in declaration order; used to publish the error catalogue.
const std::vector<Errc>& all_error_codes();

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(Errc::ParseError, message), line_(line), column_(column) {}
  /// 1-based; 0 when the failure is structural rather than lexical.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A single broken course invariant. Violations are data, not errors.
struct Violation {
  std::string rule;
  std::string entity;
  std::string message;

  bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class InsufficientQuestions : public Error {
 public:
  InsufficientQuestions(std::string section, std::vector<int> band, std::size_t needed,
                        std::size_t available);
  const std::string& section() const noexcept { return section_; }
  const std::vector<int>& band() const noexcept { return band_; }
  std::size_t needed() const noexcept { return needed_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::string section_;
  std::vector<int> band_;
  std::size_t needed_;
  std::size_t available_;
};

class CorruptLog : public Error {
 public:
  CorruptLog(std::uint64_t sequence, const std::string& detail);
  std::uint64_t sequence() const noexcept { return sequence_; }

 private:
  std::uint64_t sequence_;
};

class MissingSegment : public Error {
 public:
  explicit MissingSegment(int index);
  int index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace tutor
