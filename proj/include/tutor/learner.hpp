#pragma once

// Learner model: style profiling, knowledge-level bands, learner-level
// derivation and the per-answer running tally.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tutor/enums.hpp"
#include "tutor/question.hpp"

namespace tutor {

struct StyleProfile {
  std::array<double, 5> weights{0.2, 0.2, 0.2, 0.2, 0.2};
  LearningStyle dominant = LearningStyle::SS;

  double weight(LearningStyle s) const { return weights[index_of(s)]; }
  bool operator==(const StyleProfile&) const = default;
};

// ---------------------------------------------------------------------------
// Profiler questionnaire (deployment data)

struct ProfilerOption {
  std::string id;
  std::string label;
  std::array<int, 5> increments{};  // indexed by LearningStyle
};

struct ProfilerItem {
  std::string id;
  std::string prompt;
  std::vector<ProfilerOption> options;
};

struct Questionnaire {
  std::vector<ProfilerItem> items;
};

struct ProfilerAnswer {
  std::string item;
  std::string option;
  bool operator==(const ProfilerAnswer&) const = default;
};

/// Parses the profiler questionnaire file. Throws ParseError.
Questionnaire load_questionnaire(std::string_view bytes);

/// Normalized sum of the chosen options' increments. No answers (or all-zero
/// increments) gives the uniform profile. Throws UnknownItem, UnknownOption,
/// DuplicateAnswer.
StyleProfile profile_styles(const std::vector<ProfilerAnswer>& answers, const Questionnaire& q);

// ---------------------------------------------------------------------------
// Levels

/// 86-100 Excellent, 71-85 VeryGood, 51-70 Good, 31-50 Average, 0-30 Weak.
/// Throws OutOfRange outside 0..100.
KnowledgeLevel classify_knowledge(int score);

/// Raw mapping from a pre-test level, then clamped to one step from `prior`.
LearnerLevel derive_learner_level(KnowledgeLevel pretest, std::optional<LearnerLevel> prior);

/// round-half-up(100 * earned / max); max must be > 0.
int normalized_score(long earned, long max);

// ---------------------------------------------------------------------------
// Model

enum class ConceptStatus { NotStarted, InProgress, Completed, Skipped, Deferred };

std::string_view to_string(ConceptStatus s);
std::optional<ConceptStatus> parse_concept_status(std::string_view s);

struct ConceptRecord {
  KnowledgeLevel conceptual_level = KnowledgeLevel::Weak;
  KnowledgeLevel objective_level = KnowledgeLevel::Weak;
  /// Overall level and score of the most recent finalized phase.
  KnowledgeLevel level = KnowledgeLevel::Weak;
  int score = 0;
  /// Learning attempts in the latest session on this concept.
  int attempts = 0;
  ConceptStatus status = ConceptStatus::NotStarted;

  bool operator==(const ConceptRecord&) const = default;
};

struct Tally {
  long earned = 0;
  long max = 0;
  bool operator==(const Tally&) const = default;
};

/// In-phase accumulation; cleared by finalize_phase.
struct RunningTally {
  long earned = 0;
  long max = 0;
  Tally conceptual;
  Tally objective;
  std::vector<std::string> recorded;  // question ids, answer order

  bool operator==(const RunningTally&) const = default;
};

struct PhaseScore {
  int score = 0;
  KnowledgeLevel level = KnowledgeLevel::Weak;
  KnowledgeLevel conceptual_level = KnowledgeLevel::Weak;
  KnowledgeLevel objective_level = KnowledgeLevel::Weak;
  bool operator==(const PhaseScore&) const = default;
};

/// Levels for an overall tally and its two scope sub-tallies. A scope with no
/// questions inherits the overall level.
PhaseScore score_tallies(const Tally& overall, const Tally& conceptual, const Tally& objective);

struct LearnerModel {
  std::string learner_id;
  StyleProfile style_profile;
  /// Unset until the first pre-test is finalized.
  std::optional<LearnerLevel> learner_level;
  std::map<std::string, ConceptRecord> concept_records;
  std::set<std::string> asked_questions;
  std::optional<RunningTally> running;
  /// Relocation queue: deferred concepts, oldest deferral first.
  std::vector<std::string> deferred;
  std::optional<std::string> active_session;

  std::set<std::string> completed_concepts() const;
  bool operator==(const LearnerModel&) const = default;
};

/// Opens an empty running tally.
void begin_phase(LearnerModel& m);

/// Records one answer on the running tally. Throws NoActivePhase, or
/// InvalidArgument when the question was already recorded this phase.
void update_on_answer(LearnerModel& m, const Question& q, bool correct);

/// Scores the running tally onto concept_records[concept_id] and clears it.
/// Throws NoActivePhase, EmptyPhase.
PhaseScore finalize_phase(LearnerModel& m, const std::string& concept_id);

}  // namespace tutor
