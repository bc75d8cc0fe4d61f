#pragma once

// Simulated learners answering with a guessing-floor logistic model, and the
// cohort runner built on it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tutor/event.hpp"
#include "tutor/kb.hpp"
#include "tutor/rng.hpp"
#include "tutor/session.hpp"

namespace tutor::gateway {

struct SimulatedLearner {
  /// Logit-scale ability per section id, each in [-3, 3].
  std::map<std::string, double> ability;
  /// Used for sections without an entry.
  double default_ability = 0.0;
  LearningStyle style = LearningStyle::SS;
  /// Added to ability after content delivered with the style's first-ranked method.
  double match_bonus = 0.0;
  std::uint64_t rng_seed = 0;

  double ability_for(const std::string& section_id) const;
};

double logistic(double x);

/// g + (1 - g) * logistic(ability + bonus - (difficulty - 3)), g = 1 / |choices|.
double p_correct(const SimulatedLearner& l, const Question& q, double attained_bonus);

/// Correct with probability p_correct, otherwise a uniformly chosen wrong option.
int simulate_choice(const SimulatedLearner& l, const Question& q, double attained_bonus, SplitMix64& rng);

struct SessionTrace {
  std::string session_id;
  std::string concept_id;
  SessionState status = SessionState::Created;
  int attempts = 0;
  int pretest_score = 0;
  std::vector<int> posttest_scores;
  std::vector<Method> methods;
  std::vector<TranscriptEntry> transcript;
};

/// Drives one session to a terminal state with simulated answers.
SessionTrace simulate_session(const SessionEngine& engine, LearnerModel& m, const SimulatedLearner& l,
                              const std::string& concept_id, const std::string& session_id,
                              std::uint64_t seed, SplitMix64& rng);

struct CohortSpec {
  std::string name = "cohort";
  int learners = 100;
  double ability_mean = 0.0;
  /// Spread of learner base ability around the mean.
  double ability_sd = 1.0;
  /// Spread of per-section ability around the learner's base.
  double section_sd = 0.5;
  double match_bonus = 1.0;
  /// Off: every learner is served their least preferred method throughout.
  bool style_match = true;
  std::uint64_t seed = 1;
};

struct LearnerTrace {
  int index = 0;
  std::uint64_t seed = 0;
  LearningStyle style = LearningStyle::SS;
  double base_ability = 0.0;
  std::vector<SessionTrace> sessions;
};

struct CohortReport {
  CohortSpec spec;
  std::vector<LearnerTrace> traces;
  int sessions = 0;
  int posttests = 0;
  /// Mean over every post-test taken; absent when none was.
  std::optional<double> mean_posttest_score;
  /// Sessions ending Completed or Skipped over all sessions.
  double completion_rate = 0.0;
  /// Learning attempts per session that reached content delivery.
  double mean_attempts = 0.0;
};

SimulatedLearner make_learner(const CourseGraph& course, const CohortSpec& spec, int index);

/// Each learner walks the course once: every eligible concept gets one
/// session, until nothing new is eligible.
CohortReport run_cohort(const CourseGraph& course, const TutorConfig& cfg, const CohortSpec& spec);

Json to_json(const CohortReport& r);
std::string format_table(const std::vector<CohortReport>& reports);
std::string format_csv(const std::vector<CohortReport>& reports);

}  // namespace tutor::gateway
