#include "tutor/enums.hpp"

#include "tutor/error.hpp"

namespace tutor {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const std::array<E, N>& values) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(LearningStyle s) {
  switch (s) {
    case LearningStyle::SS: return "SS";
    case LearningStyle::GOA: return "GOA";
    case LearningStyle::EIA: return "EIA";
    case LearningStyle::CA: return "CA";
    case LearningStyle::DLA: return "DLA";
  }
  return "SS";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Text: return "text";
    case Method::Film: return "film";
    case Method::DynamicView: return "dynamic_view";
    case Method::Game: return "game";
  }
  return "text";
}

std::string_view to_string(KnowledgeLevel k) {
  switch (k) {
    case KnowledgeLevel::Weak: return "weak";
    case KnowledgeLevel::Average: return "average";
    case KnowledgeLevel::Good: return "good";
    case KnowledgeLevel::VeryGood: return "very_good";
    case KnowledgeLevel::Excellent: return "excellent";
  }
  return "weak";
}

std::string_view to_string(LearnerLevel l) {
  switch (l) {
    case LearnerLevel::Weak: return "weak";
    case LearnerLevel::SlowLearner: return "slow_learner";
    case LearnerLevel::Smart: return "smart";
    case LearnerLevel::Genius: return "genius";
  }
  return "weak";
}

std::string_view to_string(QuestionScope s) {
  return s == QuestionScope::Conceptual ? "conceptual" : "objective";
}

std::string_view to_string(Phase p) { return p == Phase::PreTest ? "pre_test" : "post_test"; }

std::optional<LearningStyle> parse_style(std::string_view s) { return lookup(s, kAllStyles); }
std::optional<Method> parse_method(std::string_view s) { return lookup(s, kAllMethods); }
std::optional<KnowledgeLevel> parse_knowledge_level(std::string_view s) {
  return lookup(s, kAllKnowledgeLevels);
}
std::optional<LearnerLevel> parse_learner_level(std::string_view s) {
  return lookup(s, kAllLearnerLevels);
}
std::optional<QuestionScope> parse_scope(std::string_view s) {
  return lookup(s, std::array{QuestionScope::Conceptual, QuestionScope::Objective});
}
std::optional<Phase> parse_phase(std::string_view s) {
  return lookup(s, std::array{Phase::PreTest, Phase::PostTest});
}

std::string_view display_label(KnowledgeLevel k) {
  switch (k) {
    case KnowledgeLevel::Weak: return "Weak";
    case KnowledgeLevel::Average: return "Average";
    case KnowledgeLevel::Good: return "Good";
    case KnowledgeLevel::VeryGood: return "Very good";
    case KnowledgeLevel::Excellent: return "Excellent";
  }
  return "Weak";
}

// ---------------------------------------------------------------------------
// Errors

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::UnknownOption: return "UnknownOption";
    case Errc::DuplicateAnswer: return "DuplicateAnswer";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NoActivePhase: return "NoActivePhase";
    case Errc::EmptyPhase: return "EmptyPhase";
    case Errc::InsufficientQuestions: return "InsufficientQuestions";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConceptNotEligible: return "ConceptNotEligible";
    case Errc::ActiveSessionExists: return "ActiveSessionExists";
    case Errc::SessionTerminal: return "SessionTerminal";
    case Errc::WrongInputKind: return "WrongInputKind";
    case Errc::ChoiceOutOfRange: return "ChoiceOutOfRange";
    case Errc::EmptyPayload: return "EmptyPayload";
    case Errc::NonPrintable: return "NonPrintable";
    case Errc::TooLong: return "TooLong";
    case Errc::MissingSegment: return "MissingSegment";
    case Errc::DuplicateSegment: return "DuplicateSegment";
    case Errc::InconsistentTotal: return "InconsistentTotal";
    case Errc::SequenceConflict: return "SequenceConflict";
    case Errc::IoFailure: return "IoFailure";
    case Errc::UnknownLearner: return "UnknownLearner";
    case Errc::UnknownSession: return "UnknownSession";
    case Errc::UnknownConcept: return "UnknownConcept";
    case Errc::CorruptLog: return "CorruptLog";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

const std::vector<Errc>& all_error_codes() {
  static const std::vector<Errc> codes = [] {
    std::vector<Errc> v;
    for (int i = 0; i <= static_cast<int>(Errc::ConfigError); ++i) v.push_back(static_cast<Errc>(i));
    return v;
  }();
  return codes;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) out += "; " + v.rule + " @ " + v.entity;
  return out;
}

std::string band_text(const std::vector<int>& band) {
  std::string out = "{";
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(band[i]);
  }
  return out + "}";
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(Errc::ValidationError, summarize(violations)), violations_(std::move(violations)) {}

InsufficientQuestions::InsufficientQuestions(std::string section, std::vector<int> band,
                                             std::size_t needed, std::size_t available)
    : Error(Errc::InsufficientQuestions,
            "section " + section + " band " + band_text(band) + " needs " + std::to_string(needed) +
                " question(s), " + std::to_string(available) + " available"),
      section_(std::move(section)),
      band_(std::move(band)),
      needed_(needed),
      available_(available) {}

CorruptLog::CorruptLog(std::uint64_t sequence, const std::string& detail)
    : Error(Errc::CorruptLog, "corrupt log at sequence " + std::to_string(sequence) + ": " + detail),
      sequence_(sequence) {}

MissingSegment::MissingSegment(int index)
    : Error(Errc::MissingSegment, "missing segment " + std::to_string(index)), index_(index) {}

}  // namespace tutor
