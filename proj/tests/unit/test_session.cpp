#include <gtest/gtest.h>

#include "support.hpp"
#include "tutor/error.hpp"
#include "tutor/kb.hpp"
#include "tutor/session.hpp"

using namespace tutor;

namespace {

AssessmentOutcome outcome(Phase phase, int score) {
  AssessmentOutcome o;
  o.phase = phase;
  o.score = score;
  o.level = classify_knowledge(score);
  return o;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ConfigError;
}

class Engine : public ::testing::Test {
 protected:
  void SetUp() override {
    course = load_course(support::fixture("minimal_course.json"));
    m.learner_id = "L0001";
  }

  // Answers every question in the current phase; `right` picks correctness.
  std::vector<Prompt> answer_phase(Session& s, const std::function<bool(const Question&)>& right) {
    std::vector<Prompt> last;
    const SessionEngine eng(course, cfg);
    const SessionState phase = s.state;
    while (s.state == phase) {
      const Question& q = course.questions.at(s.current_plan->items[s.plan_cursor]);
      const int choice = right(q) ? q.correct : (q.correct + 1) % static_cast<int>(q.choices.size());
      last = eng.submit(s, m, Input::answer(choice));
    }
    return last;
  }

  std::vector<Prompt> read_content(Session& s) {
    std::vector<Prompt> last;
    const SessionEngine eng(course, cfg);
    while (s.state == SessionState::Learning) last = eng.submit(s, m, Input::next());
    return last;
  }

  CourseGraph course;
  TutorConfig cfg;
  LearnerModel m;
};

auto all_right = [](const Question&) { return true; };
auto all_wrong = [](const Question&) { return false; };

}  // namespace

TEST(Decisions, PretestSkipThreshold) {
  EXPECT_EQ(decide_after_pretest(outcome(Phase::PreTest, 90)), PretestDecision::Skip);
  EXPECT_EQ(decide_after_pretest(outcome(Phase::PreTest, 86)), PretestDecision::Skip);
  EXPECT_EQ(decide_after_pretest(outcome(Phase::PreTest, 85)), PretestDecision::Proceed);
  EXPECT_EQ(decide_after_pretest(outcome(Phase::PreTest, 10)), PretestDecision::Proceed);
  EXPECT_EQ(code_of([] { decide_after_pretest(outcome(Phase::PostTest, 90)); }), Errc::InvalidArgument);
}

TEST(Decisions, PosttestPassRepeatDefer) {
  using K = PosttestDecision::Kind;
  const std::set<Method> all{kAllMethods.begin(), kAllMethods.end()};
  // Pass at Good and above.
  EXPECT_EQ(decide_after_posttest(outcome(Phase::PostTest, 51), 1, all, {}, LearningStyle::SS).kind,
            K::Complete);
  // Fail: next unused preferred method.
  auto d = decide_after_posttest(outcome(Phase::PostTest, 50), 1, all, {Method::Game}, LearningStyle::SS);
  EXPECT_EQ(d.kind, K::Repeat);
  EXPECT_EQ(d.method, Method::DynamicView);
  d = decide_after_posttest(outcome(Phase::PostTest, 50), 2, all, {Method::Game, Method::DynamicView},
                            LearningStyle::SS);
  EXPECT_EQ(d.method, Method::Film);
  // Everything used: back to the top preference.
  d = decide_after_posttest(outcome(Phase::PostTest, 50), 2, all, all, LearningStyle::SS);
  EXPECT_EQ(d.method, Method::Game);
  // Only Text exists.
  d = decide_after_posttest(outcome(Phase::PostTest, 50), 1, {Method::Text}, {Method::Text},
                            LearningStyle::SS);
  EXPECT_EQ(d.method, Method::Text);
  // Beyond max_repeats (2): defer.
  EXPECT_EQ(decide_after_posttest(outcome(Phase::PostTest, 50), 3, all, {}, LearningStyle::SS).kind,
            K::Defer);
}

TEST(Transitions, Table) {
  using S = SessionState;
  const std::vector<S> all{S::Created, S::PreTest, S::Learning, S::PostTest,
                           S::Completed, S::Skipped, S::Deferred};
  std::set<std::pair<S, S>> legal{{S::Created, S::PreTest},    {S::PreTest, S::Learning},
                                  {S::PreTest, S::Skipped},    {S::Learning, S::PostTest},
                                  {S::PostTest, S::Completed}, {S::PostTest, S::Learning},
                                  {S::PostTest, S::Deferred}};
  for (S a : all)
    for (S b : all) EXPECT_EQ(is_legal_transition(a, b), legal.count({a, b}) > 0);
  for (S s : all) {
    EXPECT_EQ(parse_session_state(to_string(s)), s);
    EXPECT_EQ(is_terminal(s), s == S::Completed || s == S::Skipped || s == S::Deferred);
  }
}

TEST_F(Engine, MasteryOnPretestSkips) {
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "L0001.s1", 7);
  Session& s = started.session;
  ASSERT_EQ(s.state, SessionState::PreTest);
  ASSERT_EQ(s.current_plan->items.size(), 2u);
  ASSERT_TRUE(std::holds_alternative<QuestionPrompt>(started.prompts.at(0)));
  EXPECT_EQ(m.active_session, "L0001.s1");

  const auto last = answer_phase(s, all_right);
  EXPECT_EQ(s.state, SessionState::Skipped);
  ASSERT_EQ(last.size(), 2u);
  EXPECT_EQ(std::get<PhaseResult>(last[0]).score, 100);
  EXPECT_EQ(std::get<SessionResult>(last[1]).status, SessionState::Skipped);
  EXPECT_EQ(m.concept_records["c1"].status, ConceptStatus::Skipped);
  EXPECT_EQ(m.learner_level, LearnerLevel::Genius);
  EXPECT_FALSE(m.active_session);
  EXPECT_EQ(s.history, (std::vector<SessionState>{SessionState::Created, SessionState::PreTest,
                                                  SessionState::Skipped}));
  EXPECT_TRUE(m.completed_concepts().count("c1"));
}

TEST_F(Engine, LearnThenPass) {
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "s", 1);
  Session& s = started.session;
  auto prompts = answer_phase(s, all_wrong);
  ASSERT_EQ(s.state, SessionState::Learning);
  EXPECT_EQ(m.learner_level, LearnerLevel::Weak);
  const auto& page = std::get<ContentPage>(prompts.back());
  EXPECT_EQ(page.page, 1);
  EXPECT_EQ(page.total, 2);
  EXPECT_FALSE(page.media);
  EXPECT_EQ(m.concept_records["c1"].attempts, 1);

  EXPECT_EQ(code_of([&] { eng.submit(s, m, Input::answer(0)); }), Errc::WrongInputKind);
  read_content(s);
  ASSERT_EQ(s.state, SessionState::PostTest);
  EXPECT_EQ(code_of([&] { eng.submit(s, m, Input::next()); }), Errc::WrongInputKind);
  EXPECT_EQ(code_of([&] { eng.submit(s, m, Input::answer(4)); }), Errc::ChoiceOutOfRange);
  EXPECT_EQ(code_of([&] { eng.submit(s, m, Input::answer(-1)); }), Errc::ChoiceOutOfRange);

  answer_phase(s, all_right);
  EXPECT_EQ(s.state, SessionState::Completed);
  EXPECT_EQ(m.concept_records["c1"].status, ConceptStatus::Completed);
  EXPECT_EQ(m.concept_records["c1"].score, 100);
  EXPECT_EQ(code_of([&] { eng.submit(s, m, Input::answer(0)); }), Errc::SessionTerminal);
}

TEST_F(Engine, RepeatsThenDefers) {
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "s", 3);
  Session& s = started.session;
  answer_phase(s, all_wrong);
  for (int attempt = 1; attempt <= cfg.max_repeats + 1; ++attempt) {
    ASSERT_EQ(s.state, SessionState::Learning) << attempt;
    EXPECT_EQ(s.attempt, attempt);
    read_content(s);
    if (s.state == SessionState::Deferred) break;  // bank ran dry
    answer_phase(s, all_wrong);
  }
  EXPECT_EQ(s.state, SessionState::Deferred);
  EXPECT_EQ(s.close_reason, "max-repeats");
  EXPECT_EQ(m.deferred, (std::vector<std::string>{"c1"}));
  EXPECT_EQ(m.concept_records["c1"].attempts, cfg.max_repeats + 1);
  // Deferred concepts stay eligible.
  EXPECT_NO_THROW(eng.start(m, "c1", "s2", 4));
}

TEST_F(Engine, BankExhaustionDefers) {
  cfg.posttest_count = 3;
  cfg.max_repeats = 10;
  // The pre-test takes one d2 and one d3 question. The Weak band {1,2} then
  // has 9 unseen questions: three post-tests, and the fourth cannot be drawn.
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "s", 3);
  Session& s = started.session;
  answer_phase(s, all_wrong);
  while (s.state == SessionState::Learning) {
    read_content(s);
    if (s.state == SessionState::PostTest) answer_phase(s, all_wrong);
  }
  EXPECT_EQ(s.state, SessionState::Deferred);
  EXPECT_EQ(s.close_reason, "bank-exhausted");
  EXPECT_EQ(s.attempt, 4);
  EXPECT_EQ(s.transcript.back().payload["reason"], "bank-exhausted");
}

TEST_F(Engine, StartErrors) {
  const SessionEngine eng(course, cfg);
  EXPECT_EQ(code_of([&] { eng.start(m, "nope", "s", 1); }), Errc::UnknownConcept);
  auto started = eng.start(m, "c1", "s", 1);
  EXPECT_EQ(code_of([&] { eng.start(m, "c1", "t", 1); }), Errc::ActiveSessionExists);
  answer_phase(started.session, all_right);
  EXPECT_EQ(code_of([&] { eng.start(m, "c1", "t", 1); }), Errc::ConceptNotEligible);
}

TEST_F(Engine, FailedCallsLeaveStateUntouched) {
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "s", 1);
  const Session before_s = started.session;
  const LearnerModel before_m = m;
  EXPECT_THROW(eng.submit(started.session, m, Input::next()), Error);
  EXPECT_THROW(eng.submit(started.session, m, Input::answer(9)), Error);
  EXPECT_EQ(started.session, before_s);
  EXPECT_EQ(m, before_m);
}

TEST_F(Engine, TranscriptRecordsEveryStep) {
  const SessionEngine eng(course, cfg);
  auto started = eng.start(m, "c1", "sid", 42);
  Session& s = started.session;
  answer_phase(s, all_wrong);
  read_content(s);
  answer_phase(s, all_right);
  std::vector<EventKind> kinds;
  for (const auto& e : s.transcript) kinds.push_back(e.kind);
  using E = EventKind;
  EXPECT_EQ(kinds, (std::vector<E>{E::SessionStarted, E::AnswerSubmitted, E::AnswerSubmitted,
                                   E::PhaseFinalized, E::PageAdvanced, E::PageAdvanced,
                                   E::AnswerSubmitted, E::AnswerSubmitted, E::PhaseFinalized,
                                   E::SessionClosed}));
  EXPECT_EQ(s.transcript[0].payload["seed"], 42u);
  EXPECT_EQ(s.transcript[3].payload["decision"], "proceed");
  EXPECT_EQ(s.transcript[3].payload["learner_level"], "weak");
  EXPECT_EQ(s.transcript[8].payload["decision"], "complete");
  EXPECT_EQ(s.transcript[9].payload["status"], "completed");
}

TEST_F(Engine, SameSeedSameSession) {
  const SessionEngine eng(course, cfg);
  LearnerModel m2 = m;
  auto a = eng.start(m, "c1", "x", 99);
  auto b = eng.start(m2, "c1", "x", 99);
  EXPECT_EQ(a.session, b.session);
  EXPECT_EQ(m, m2);
}

TEST_F(Engine, FixedMethodOverridesStyle) {
  auto g = support::uniform_course({5}, 4, true);
  cfg.fixed_method = Method::Film;
  const SessionEngine eng(g, cfg);
  m.style_profile.dominant = LearningStyle::SS;
  auto started = eng.start(m, "c1", "s", 5);
  Session& s = started.session;
  while (s.state == SessionState::PreTest) eng.submit(s, m, Input::answer((s.plan_cursor + 1) % 4));
  ASSERT_EQ(s.state, SessionState::Learning);
  EXPECT_EQ(g.find_variant(*s.current_variant)->method, Method::Film);
}

TEST_F(Engine, StyleDrivesFirstMethod) {
  auto g = support::uniform_course({5}, 4, true);
  for (auto style : kAllStyles) {
    LearnerModel lm;
    lm.style_profile.dominant = style;
    const SessionEngine eng(g, cfg);
    auto started = eng.start(lm, "c1", "s", 5);
    Session& s = started.session;
    // Every question wrong: the learner always reaches learning.
    while (s.state == SessionState::PreTest) {
      const Question& q = g.questions.at(s.current_plan->items[s.plan_cursor]);
      eng.submit(s, lm, Input::answer((q.correct + 1) % 4));
    }
    ASSERT_EQ(s.state, SessionState::Learning);
    EXPECT_EQ(g.find_variant(*s.current_variant)->method, cfg.preference(style)[0]);
  }
}
