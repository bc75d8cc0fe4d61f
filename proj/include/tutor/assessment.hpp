#pragma once

// Rule-based test planning and grading.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tutor/config.hpp"
#include "tutor/kb.hpp"
#include "tutor/learner.hpp"
#include "tutor/question.hpp"

namespace tutor {

struct TestPlan {
  Phase phase = Phase::PreTest;
  std::string concept_id;
  std::vector<std::string> items;
  std::uint64_t seed = 0;

  bool operator==(const TestPlan&) const = default;
};

struct GradedAnswer {
  std::string question_id;
  int chosen = 0;
  bool correct = false;
  bool operator==(const GradedAnswer&) const = default;
};

struct AssessmentOutcome {
  Phase phase = Phase::PreTest;
  int score = 0;
  KnowledgeLevel level = KnowledgeLevel::Weak;
  KnowledgeLevel conceptual_level = KnowledgeLevel::Weak;
  KnowledgeLevel objective_level = KnowledgeLevel::Weak;
  std::map<std::string, Tally> per_section;
  std::vector<GradedAnswer> answers;

  bool operator==(const AssessmentOutcome&) const = default;
};

/// Difficulty values allowed for a learner level, ascending.
std::vector<int> difficulty_band(LearnerLevel level, const TutorConfig& cfg = {});

/// The band used to plan for `m` (initial_level before the first pre-test).
std::vector<int> planning_band(const LearnerModel& m, const TutorConfig& cfg = {});

/// Slots per section: count split as evenly as possible; extra slots go to
/// the most important sections (ties by section order).
std::vector<int> section_slots(const Concept& con, int count);

/// Selects `count` unseen questions covering every section. Deterministic in
/// (bank, concept, asked set, level, phase, count, seed); the seed only
/// shuffles equally eligible candidates. Throws InvalidArgument when
/// count < |sections|, InsufficientQuestions when a section runs dry.
TestPlan plan_test(const QuestionBank& bank, const Concept& con, const LearnerModel& m,
                   Phase phase, int count, std::uint64_t seed, const TutorConfig& cfg = {});

/// Scores answers (choice indices) against the plan. Throws LengthMismatch.
AssessmentOutcome grade(const TestPlan& plan, const QuestionBank& bank,
                        const std::vector<int>& answers);

}  // namespace tutor
