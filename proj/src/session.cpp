#include "tutor/session.hpp"

#include <algorithm>
#include <stdexcept>

#include "tutor/error.hpp"
#include "tutor/rng.hpp"

namespace tutor {

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::Created: return "created";
    case SessionState::PreTest: return "pre_test";
    case SessionState::Learning: return "learning";
    case SessionState::PostTest: return "post_test";
    case SessionState::Completed: return "completed";
    case SessionState::Skipped: return "skipped";
    case SessionState::Deferred: return "deferred";
  }
  return "created";
}

std::optional<SessionState> parse_session_state(std::string_view s) {
  for (auto v : {SessionState::Created, SessionState::PreTest, SessionState::Learning,
                 SessionState::PostTest, SessionState::Completed, SessionState::Skipped,
                 SessionState::Deferred}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

bool is_terminal(SessionState s) {
  return s == SessionState::Completed || s == SessionState::Skipped ||
         s == SessionState::Deferred;
}

bool is_legal_transition(SessionState from, SessionState to) {
  using S = SessionState;
  switch (from) {
    case S::Created: return to == S::PreTest;
    case S::PreTest: return to == S::Learning || to == S::Skipped;
    case S::Learning: return to == S::PostTest;
    case S::PostTest: return to == S::Completed || to == S::Learning || to == S::Deferred;
    case S::Completed:
    case S::Skipped:
    case S::Deferred: return false;
  }
  return false;
}

PretestDecision decide_after_pretest(const AssessmentOutcome& outcome, const TutorConfig& cfg) {
  if (outcome.phase != Phase::PreTest)
    throw Error(Errc::InvalidArgument, "decide_after_pretest needs a pre-test outcome");
  return outcome.level >= cfg.skip_level ? PretestDecision::Skip : PretestDecision::Proceed;
}

PosttestDecision decide_after_posttest(const AssessmentOutcome& outcome, int attempt,
                                       const std::set<Method>& available_methods,
                                       const std::set<Method>& used_methods,
                                       LearningStyle dominant, const TutorConfig& cfg) {
  if (outcome.phase != Phase::PostTest)
    throw Error(Errc::InvalidArgument, "decide_after_posttest needs a post-test outcome");
  using K = PosttestDecision::Kind;
  if (outcome.level >= cfg.pass_level) return {K::Complete, Method::Text};
  if (attempt > cfg.max_repeats) return {K::Defer, Method::Text};

  const auto& pref = cfg.preference(dominant);
  for (Method m : pref) {
    if (available_methods.count(m) && !used_methods.count(m)) return {K::Repeat, m};
  }
  for (Method m : pref) {
    if (available_methods.count(m)) return {K::Repeat, m};
  }
  return {K::Repeat, Method::Text};
}

// ---------------------------------------------------------------------------

namespace {

std::string_view decision_name(PosttestDecision::Kind k) {
  switch (k) {
    case PosttestDecision::Kind::Complete: return "complete";
    case PosttestDecision::Kind::Repeat: return "repeat";
    case PosttestDecision::Kind::Defer: return "defer";
  }
  return "complete";
}

ConceptStatus status_for(SessionState s) {
  switch (s) {
    case SessionState::Completed: return ConceptStatus::Completed;
    case SessionState::Skipped: return ConceptStatus::Skipped;
    case SessionState::Deferred: return ConceptStatus::Deferred;
    default: return ConceptStatus::InProgress;
  }
}

}  // namespace

void SessionEngine::enter(Session& s, SessionState next) const {
  if (!is_legal_transition(s.state, next)) {
    throw std::logic_error("illegal session transition " + std::string(to_string(s.state)) +
                           " -> " + std::string(to_string(next)));
  }
  s.state = next;
  s.history.push_back(next);
}

SessionEngine::Started SessionEngine::start(LearnerModel& m, std::string_view concept_id,
                                            std::string session_id, std::uint64_t seed) const {
  const Concept& con = course_.concept_at(concept_id);
  if (m.active_session) {
    throw Error(Errc::ActiveSessionExists,
                "learner " + m.learner_id + " already has session " + *m.active_session);
  }
  const auto eligible = next_concepts(course_, m.completed_concepts(), m.deferred);
  if (std::find(eligible.begin(), eligible.end(), con.id) == eligible.end())
    throw Error(Errc::ConceptNotEligible, "concept " + con.id + " is not eligible");

  TestPlan plan = plan_test(course_.questions, con, m, Phase::PreTest,
                            cfg_.test_count(Phase::PreTest, con.sections.size()),
                            derive_seed(seed, 0), cfg_);

  Session s;
  s.session_id = std::move(session_id);
  s.learner_id = m.learner_id;
  s.concept_id = con.id;
  s.seed = seed;
  s.history.push_back(SessionState::Created);
  enter(s, SessionState::PreTest);
  s.current_plan = std::move(plan);
  s.plans_drawn = 1;
  s.transcript.push_back({EventKind::SessionStarted,
                          Json{{"session_id", s.session_id},
                               {"concept_id", s.concept_id},
                               {"seed", s.seed}}});

  m.active_session = s.session_id;
  auto& rec = m.concept_records[con.id];
  rec.status = ConceptStatus::InProgress;
  rec.attempts = 0;
  begin_phase(m);

  std::vector<Prompt> prompts{question_prompt(s)};
  return {std::move(s), std::move(prompts)};
}

std::vector<Prompt> SessionEngine::submit(Session& s, LearnerModel& m, const Input& input) const {
  if (is_terminal(s.state) || s.state == SessionState::Created)
    throw Error(Errc::SessionTerminal, "session " + s.session_id + " is not active");

  if (s.state == SessionState::Learning) {
    if (input.kind != Input::Kind::Next)
      throw Error(Errc::WrongInputKind, "content pages expect NEXT");
    const ContentVariant* v = course_.find_variant(*s.current_variant);
    ++s.content_cursor;
    s.transcript.push_back({EventKind::PageAdvanced,
                            Json{{"session_id", s.session_id},
                                 {"page", s.content_cursor}}});
    if (s.content_cursor < v->body.size()) return {content_page(s)};
    return begin_posttest(s, m);
  }

  if (input.kind != Input::Kind::Answer)
    throw Error(Errc::WrongInputKind, "tests expect an answer letter");
  const Question& q = course_.questions.at(s.current_plan->items[s.plan_cursor]);
  if (input.choice < 0 || input.choice >= static_cast<int>(q.choices.size())) {
    throw Error(Errc::ChoiceOutOfRange, "choice " + std::to_string(input.choice) + " for " +
                                            std::to_string(q.choices.size()) + " choices");
  }
  const bool correct = input.choice == q.correct;
  update_on_answer(m, q, correct);
  s.phase_answers.push_back(input.choice);
  ++s.plan_cursor;
  s.transcript.push_back({EventKind::AnswerSubmitted,
                          Json{{"session_id", s.session_id},
                               {"question_id", q.id},
                               {"choice", input.choice},
                               {"correct", correct}}});
  if (s.plan_cursor < s.current_plan->items.size()) return {question_prompt(s)};
  return finish_phase(s, m);
}

std::vector<Prompt> SessionEngine::finish_phase(Session& s, LearnerModel& m) const {
  const Concept& con = course_.concept_at(s.concept_id);
  const AssessmentOutcome outcome = grade(*s.current_plan, course_.questions, s.phase_answers);
  const PhaseScore recorded = finalize_phase(m, s.concept_id);
  if (recorded.score != outcome.score || recorded.level != outcome.level)
    throw std::logic_error("running tally disagrees with grading");

  s.last_level = outcome.level;
  s.current_plan.reset();
  s.plan_cursor = 0;
  s.phase_answers.clear();

  Json payload{{"session_id", s.session_id},
               {"phase", to_string(outcome.phase)},
               {"attempt", s.attempt},
               {"score", outcome.score},
               {"level", to_string(outcome.level)},
               {"conceptual_level", to_string(outcome.conceptual_level)},
               {"objective_level", to_string(outcome.objective_level)}};
  std::vector<Prompt> prompts{PhaseResult{outcome.phase, outcome.score, outcome.level}};
  auto append = [&prompts](std::vector<Prompt> more) {
    prompts.insert(prompts.end(), more.begin(), more.end());
    return prompts;
  };

  if (outcome.phase == Phase::PreTest) {
    m.learner_level = derive_learner_level(outcome.level, m.learner_level);
    const bool skip = decide_after_pretest(outcome, cfg_) == PretestDecision::Skip;
    payload["decision"] = skip ? "skip" : "proceed";
    payload["learner_level"] = to_string(*m.learner_level);
    s.transcript.push_back({EventKind::PhaseFinalized, std::move(payload)});
    if (skip) return append(close(s, m, SessionState::Skipped, "mastered"));
    return append(begin_learning(s, m, choose_method(s, m, con)));
  }

  PosttestDecision d =
      decide_after_posttest(outcome, s.attempt, course_.methods_for(s.concept_id),
                            s.used_methods, m.style_profile.dominant, cfg_);
  if (d.kind == PosttestDecision::Kind::Repeat && cfg_.fixed_method) d.method = *cfg_.fixed_method;
  payload["decision"] = decision_name(d.kind);
  if (d.kind == PosttestDecision::Kind::Repeat) payload["method"] = to_string(d.method);
  s.transcript.push_back({EventKind::PhaseFinalized, std::move(payload)});

  switch (d.kind) {
    case PosttestDecision::Kind::Complete:
      return append(close(s, m, SessionState::Completed, "passed"));
    case PosttestDecision::Kind::Defer:
      return append(close(s, m, SessionState::Deferred, "max-repeats"));
    case PosttestDecision::Kind::Repeat:
      ++s.attempt;
      return append(begin_learning(s, m, d.method));
  }
  return prompts;
}

Method SessionEngine::choose_method(const Session&, const LearnerModel& m,
                                    const Concept& c) const {
  if (cfg_.fixed_method) return *cfg_.fixed_method;
  return select_variant(course_, c, m, {}, cfg_).method;
}

std::vector<Prompt> SessionEngine::begin_learning(Session& s, LearnerModel& m,
                                                  Method method) const {
  const Concept& con = course_.concept_at(s.concept_id);
  std::set<Method> others;
  for (Method x : kAllMethods)
    if (x != method) others.insert(x);
  const ContentVariant& v = select_variant(course_, con, m, others, cfg_);

  enter(s, SessionState::Learning);
  s.current_variant = v.id;
  s.content_cursor = 0;
  s.used_methods.insert(v.method);
  m.concept_records[s.concept_id].attempts = s.attempt;
  return {content_page(s)};
}

std::vector<Prompt> SessionEngine::begin_posttest(Session& s, LearnerModel& m) const {
  const Concept& con = course_.concept_at(s.concept_id);
  enter(s, SessionState::PostTest);
  try {
    s.current_plan = plan_test(course_.questions, con, m, Phase::PostTest,
                               cfg_.test_count(Phase::PostTest, con.sections.size()),
                               derive_seed(s.seed, static_cast<std::uint64_t>(s.plans_drawn)),
                               cfg_);
  } catch (const InsufficientQuestions&) {
    return close(s, m, SessionState::Deferred, "bank-exhausted");
  }
  ++s.plans_drawn;
  s.plan_cursor = 0;
  s.phase_answers.clear();
  begin_phase(m);
  return {question_prompt(s)};
}

std::vector<Prompt> SessionEngine::close(Session& s, LearnerModel& m, SessionState terminal,
                                         std::string reason) const {
  enter(s, terminal);
  s.current_plan.reset();
  s.plan_cursor = 0;
  s.phase_answers.clear();
  s.current_variant.reset();
  s.content_cursor = 0;
  s.close_reason = reason;

  m.active_session.reset();
  m.running.reset();
  m.concept_records[s.concept_id].status = status_for(terminal);
  std::erase(m.deferred, s.concept_id);
  if (terminal == SessionState::Deferred) m.deferred.push_back(s.concept_id);

  s.transcript.push_back({EventKind::SessionClosed,
                          Json{{"session_id", s.session_id},
                               {"status", to_string(terminal)},
                               {"reason", std::move(reason)},
                               {"level", to_string(s.last_level)}}});
  return {SessionResult{terminal, s.last_level}};
}

QuestionPrompt SessionEngine::question_prompt(const Session& s) const {
  const Question& q = course_.questions.at(s.current_plan->items[s.plan_cursor]);
  return {q.id, q.prompt, q.choices};
}

ContentPage SessionEngine::content_page(const Session& s) const {
  const ContentVariant* v = course_.find_variant(*s.current_variant);
  return {v->body[s.content_cursor], v->method != Method::Text,
          static_cast<int>(s.content_cursor) + 1, static_cast<int>(v->body.size())};
}

Prompt SessionEngine::current_prompt(const Session& s) const {
  switch (s.state) {
    case SessionState::PreTest:
    case SessionState::PostTest: return question_prompt(s);
    case SessionState::Learning: return content_page(s);
    case SessionState::Completed:
    case SessionState::Skipped:
    case SessionState::Deferred: return SessionResult{s.state, s.last_level};
    case SessionState::Created: break;
  }
  throw Error(Errc::SessionTerminal, "session has not started");
}

}  // namespace tutor
