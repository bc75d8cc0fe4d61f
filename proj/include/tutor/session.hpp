#pragma once

// Per-concept tutoring state machine: pre-test, learning, post-test, with
// skip / repeat / defer adaptation.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tutor/assessment.hpp"
#include "tutor/config.hpp"
#include "tutor/event.hpp"
#include "tutor/kb.hpp"
#include "tutor/learner.hpp"

namespace tutor {

enum class SessionState { Created, PreTest, Learning, PostTest, Completed, Skipped, Deferred };

std::string_view to_string(SessionState s);
std::optional<SessionState> parse_session_state(std::string_view s);
bool is_terminal(SessionState s);
bool is_legal_transition(SessionState from, SessionState to);

struct QuestionPrompt {
  std::string question_id;
  std::string text;
  std::vector<std::string> choices;
  bool operator==(const QuestionPrompt&) const = default;
};

struct ContentPage {
  /// Page text, or the media reference for non-Text methods.
  std::string body;
  bool media = false;
  int page = 1;
  int total = 1;
  bool operator==(const ContentPage&) const = default;
};

struct PhaseResult {
  Phase phase = Phase::PreTest;
  int score = 0;
  KnowledgeLevel level = KnowledgeLevel::Weak;
  bool operator==(const PhaseResult&) const = default;
};

struct SessionResult {
  SessionState status = SessionState::Completed;
  KnowledgeLevel level = KnowledgeLevel::Weak;
  bool operator==(const SessionResult&) const = default;
};

using Prompt = std::variant<QuestionPrompt, ContentPage, PhaseResult, SessionResult>;

struct Session {
  std::string session_id;
  std::string learner_id;
  std::string concept_id;
  SessionState state = SessionState::Created;
  int attempt = 1;
  std::uint64_t seed = 0;
  /// Number of plans drawn so far; keys the per-plan seed.
  int plans_drawn = 0;
  std::optional<TestPlan> current_plan;
  std::size_t plan_cursor = 0;
  std::vector<int> phase_answers;
  std::optional<std::string> current_variant;
  std::size_t content_cursor = 0;
  std::set<Method> used_methods;
  KnowledgeLevel last_level = KnowledgeLevel::Weak;
  /// Why a Deferred session ended: "max-repeats" or "bank-exhausted".
  std::string close_reason;
  std::vector<TranscriptEntry> transcript;
  /// Every state entered, in order, starting with Created.
  std::vector<SessionState> history;

  bool operator==(const Session&) const = default;
};

struct Input {
  enum class Kind { Answer, Next };
  Kind kind = Kind::Next;
  int choice = 0;

  static Input answer(int choice) { return {Kind::Answer, choice}; }
  static Input next() { return {Kind::Next, 0}; }
};

enum class PretestDecision { Skip, Proceed };

struct PosttestDecision {
  enum class Kind { Complete, Repeat, Defer };
  Kind kind = Kind::Complete;
  Method method = Method::Text;  // meaningful for Repeat
  bool operator==(const PosttestDecision&) const = default;
};

/// Skip when the pre-test reaches cfg.skip_level.
PretestDecision decide_after_pretest(const AssessmentOutcome& outcome, const TutorConfig& cfg = {});

/// Complete at or above cfg.pass_level; otherwise Repeat while
/// attempt <= cfg.max_repeats (next method: the most preferred available
/// method not yet used, else the most preferred overall); else Defer.
PosttestDecision decide_after_posttest(const AssessmentOutcome& outcome, int attempt,
                                       const std::set<Method>& available_methods,
                                       const std::set<Method>& used_methods,
                                       LearningStyle dominant, const TutorConfig& cfg = {});

/// Drives sessions against one course and configuration. Stateless; all
/// state lives in the Session and LearnerModel passed in. Failed calls leave
/// both untouched.
class SessionEngine {
 public:
  SessionEngine(const CourseGraph& course, const TutorConfig& cfg) : course_(course), cfg_(cfg) {}

  struct Started {
    Session session;
    std::vector<Prompt> prompts;
  };

  /// Throws UnknownConcept, ConceptNotEligible, ActiveSessionExists,
  /// InsufficientQuestions.
  Started start(LearnerModel& m, std::string_view concept_id, std::string session_id,
                std::uint64_t seed) const;

  /// Applies one input and returns the prompts to show, in order. Throws
  /// SessionTerminal, WrongInputKind, ChoiceOutOfRange.
  std::vector<Prompt> submit(Session& s, LearnerModel& m, const Input& input) const;

  /// What the learner is looking at now (re-rendered from state).
  Prompt current_prompt(const Session& s) const;

  const CourseGraph& course() const noexcept { return course_; }
  const TutorConfig& config() const noexcept { return cfg_; }

 private:
  std::vector<Prompt> finish_phase(Session& s, LearnerModel& m) const;
  std::vector<Prompt> begin_learning(Session& s, LearnerModel& m, Method method) const;
  std::vector<Prompt> begin_posttest(Session& s, LearnerModel& m) const;
  std::vector<Prompt> close(Session& s, LearnerModel& m, SessionState terminal,
                            std::string reason) const;
  void enter(Session& s, SessionState next) const;
  QuestionPrompt question_prompt(const Session& s) const;
  ContentPage content_page(const Session& s) const;
  Method choose_method(const Session& s, const LearnerModel& m, const Concept& c) const;

  const CourseGraph& course_;
  TutorConfig cfg_;
};

}  // namespace tutor
